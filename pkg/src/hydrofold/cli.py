"""Command-line entry point: ``hydrofold {encode,family-energy,compat,search}``.

Exit codes: 0 success, 1 internal error, 2 input error, 3 guard refusal.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from hydrofold import energy as en
from hydrofold import fold, report, search, seq

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
SCALE_ENV = "HYDROFOLD_SCALE_PATH"


class UsageError(ValueError):
    pass


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-i", "--input", type=Path, help="sequence file")
    src.add_argument("-s", "--sequence", help="inline sequence text")
    src.add_argument("--fixture", action="store_true", help="use the bundled 104-residue 5CYT sequence")
    p.add_argument(
        "-f", "--format", choices=("auto", "raw", "fasta", "hp"), default="auto",
        help="input format; 'hp' reads an H/P profile directly (default: fasta if the text starts with '>')",
    )


def _add_scale(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scale", default=None, help=f"'builtin-kd' or a TSV scale file (default: ${SCALE_ENV} or builtin-kd)")
    p.add_argument("--threshold", type=float, default=None, help="hydrophobic if value > threshold (default 0.0)")
    p.add_argument("--unknown", choices=seq.UNKNOWN_POLICIES, default=seq.TREAT_AS_HYDROPHILIC)


def _add_conventions(p: argparse.ArgumentParser) -> None:
    d = en.DEFAULT_CONVENTIONS
    p.add_argument("--variant", choices=en.VARIANTS, default=d.variant)
    p.add_argument("--origin-policy", choices=fold.ORIGIN_POLICIES, default=d.origin_policy)
    p.add_argument("--mask-alignment", choices=en.MASK_ALIGNMENTS, default=d.mask_alignment)
    p.add_argument("--hydrophobic-set", choices=seq.HYDROPHOBIC_SETS, default=d.hydrophobic_set)
    p.add_argument("--unfolded-input", choices=en.UNFOLDED_INPUTS, default=d.unfolded_input)
    p.add_argument("--generation-mode", choices=fold.GENERATION_MODES, default=d.generation_mode)
    p.add_argument("--paper-compat", action="store_true", help="use the best-residual convention set for the published numbers")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", type=Path, default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hydrofold", description="Hydrophobicity-driven 2D lattice fold scoring")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="binary hydrophobicity profile of a sequence")
    _add_input(p)
    _add_scale(p)
    _add_output(p)

    p = sub.add_parser("family-energy", help="generate the fold family and score every member")
    _add_input(p)
    _add_conventions(p)
    _add_output(p)
    p.add_argument("--output-format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--folds", default="1", help="comma-separated 1-based fold indices for svg output, or 'all'")
    p.add_argument("--energy-svg", type=Path, default=None, help="also write an energy-by-fold plot")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("compat", help="rank convention sets against published energy values")
    _add_input(p)
    _add_output(p)
    p.add_argument("--targets", default=None, help="explicit targets 'e,E1,E2' (required unless the input is the fixture)")
    p.add_argument("--self-check", action="store_true",
                   help="take targets from this tool's own output under the convention flags")
    _add_conventions(p)
    p.add_argument("--top", type=int, default=10, help="rows in the printed summary")

    p = sub.add_parser("search", help="minimum-energy self-avoiding conformation")
    _add_input(p)
    _add_scale(p)
    _add_output(p)
    p.add_argument("--variant", choices=en.VARIANTS, default=en.HP_CONTACT)
    p.add_argument("--method", choices=(search.EXHAUSTIVE, search.ANNEAL), default=search.EXHAUSTIVE)
    p.add_argument("--guard", type=int, default=search.DEFAULT_GUARD, help="maximum steps for exhaustive search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=search.Schedule.steps)
    p.add_argument("--initial-temp", type=float, default=search.Schedule.initial_temp)
    p.add_argument("--cooling", type=float, default=search.Schedule.cooling_factor)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _read_input(args) -> tuple[seq.Sequence | None, seq.BinaryProfile | None]:
    """Return ``(sequence, None)`` for residue input or ``(None, profile)`` for H/P input."""
    if args.fixture:
        if args.format == "hp":
            raise UsageError("--fixture is an amino-acid sequence; --format hp does not apply")
        return seq.fixture_5cyt(), None
    text = args.input.read_text() if args.input is not None else args.sequence
    fmt = args.format
    if fmt == "auto":
        fmt = "fasta" if text.lstrip().startswith(">") else "raw"
    if fmt == "hp":
        if text.lstrip().startswith(">"):
            text = "\n".join(text.strip().splitlines()[1:])
        return None, seq.BinaryProfile.from_hp(text)
    return seq.parse_sequence(text, fmt), None


def _scale(args) -> seq.HydropathyScale:
    source = args.scale or os.environ.get(SCALE_ENV) or "builtin-kd"
    return seq.load_scale(source, args.threshold).with_policy(args.unknown)


def _conventions(args) -> en.ConventionSet:
    if args.paper_compat:
        return en.PAPER_COMPAT
    return en.ConventionSet(
        variant=args.variant,
        origin_policy=args.origin_policy,
        mask_alignment=args.mask_alignment,
        hydrophobic_set=args.hydrophobic_set,
        unfolded_input=args.unfolded_input,
        generation_mode=args.generation_mode,
    )


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def cmd_encode(args) -> int:
    sequence, profile = _read_input(args)
    if profile is None:
        profile = seq.encode_binary(sequence, _scale(args))
    _emit(f"{profile.to_string()}\nhydrophobic_count: {profile.hydrophobic_count}\n", args.output)
    return EXIT_OK


def _parse_fold_indices(spec: str, n: int) -> list[int]:
    if spec.strip() == "all":
        return list(range(1, n + 1))
    try:
        indices = [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad --folds value {spec!r}") from None
    for i in indices:
        if not 1 <= i <= n:
            raise UsageError(f"fold index {i} outside 1..{n}")
    return indices


def cmd_family_energy(args) -> int:
    sequence, profile = _read_input(args)
    conventions = _conventions(args)
    if profile is None:
        profile = seq.profile_for_set(sequence, conventions.hydrophobic_set)
    if len(profile) < 2:
        raise UsageError("need at least 2 residues to form a fold")
    family = fold.family_generate(len(profile) - 1, conventions.generation_mode)
    rep = en.family_energies(family, profile, conventions, workers=args.workers)
    if args.output_format == "csv":
        text = report.report_to_csv(rep)
    elif args.output_format == "json":
        text = report.report_to_json(rep)
    else:
        folds = [
            (f"fold {i}: {fold.to_direction_string(family[i - 1])}", fold.embed(family[i - 1], conventions.origin_policy))
            for i in _parse_fold_indices(args.folds, len(family))
        ]
        text = report.render_folds_svg(folds, profile.bits, conventions.mask_alignment)
    _emit(text, args.output)
    if args.energy_svg is not None:
        args.energy_svg.write_text(report.render_energy_svg(rep))
    return EXIT_OK


def _parse_targets(text: str) -> en.Targets:
    try:
        e, e1, e2 = (float(tok) for tok in text.split(","))
    except ValueError:
        raise UsageError("--targets expects three comma-separated numbers 'e,E1,E2'") from None
    return en.Targets(e, e1, e2)


def cmd_compat(args) -> int:
    sequence, profile = _read_input(args)
    if sequence is None:
        raise UsageError("compat needs an amino-acid sequence, not an H/P profile")
    if args.self_check:
        conv = _conventions(args)
        if conv.variant == en.HP_CONTACT:
            raise UsageError("hp_contact is not part of the compatibility grid")
        p = seq.profile_for_set(sequence, conv.hydrophobic_set)
        family = fold.family_generate(len(sequence) - 1, conv.generation_mode)
        rep = en.family_energies(family, p, conv)
        targets = en.Targets(rep.unfolded_energy, rep.per_fold[0].energy, rep.per_fold[1].energy)
    elif args.targets is not None:
        targets = _parse_targets(args.targets)
    elif sequence.residues == seq.fixture_5cyt().residues:
        targets = en.PUBLISHED_TARGETS
    else:
        raise UsageError("explicit --targets are required for sequences other than the 5CYT fixture")
    result = en.compat_search(sequence, targets)
    summary = report.compat_summary(result, args.top)
    if args.output is None:
        sys.stdout.write(report.compat_to_json(result))
        sys.stderr.write(summary)
    else:
        args.output.write_text(report.compat_to_json(result))
        sys.stdout.write(summary)
    return EXIT_OK


def cmd_search(args) -> int:
    sequence, profile = _read_input(args)
    if profile is None:
        profile = seq.encode_binary(sequence, _scale(args))
    if args.method == search.EXHAUSTIVE:
        result = search.enumerate_saw(profile, args.variant, args.guard, workers=args.workers)
    else:
        schedule = search.Schedule(args.initial_temp, args.cooling, args.steps)
        result = search.anneal(profile, args.variant, schedule, args.seed)
    _emit(json.dumps(result.to_dict(), indent=2) + "\n", args.output)
    return EXIT_OK


COMMANDS = {
    "encode": cmd_encode,
    "family-energy": cmd_family_energy,
    "compat": cmd_compat,
    "search": cmd_search,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except search.GuardError as exc:
        print(f"hydrofold: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (OSError, ValueError) as exc:
        print(f"hydrofold: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"hydrofold: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
