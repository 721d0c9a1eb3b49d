"""Sequence parsing, hydropathy scales and binary hydrophobicity profiles."""
from __future__ import annotations

import math
import string
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

STANDARD_RESIDUES = frozenset("ACDEFGHIKLMNPQRSTVWY")

# Kyte & Doolittle, J. Mol. Biol. 157:105-132 (1982), Table 2.
KYTE_DOOLITTLE = MappingProxyType({
    "A": 1.8, "R": -4.5, "N": -3.5, "D": -3.5, "C": 2.5,
    "Q": -3.5, "E": -3.5, "G": -0.4, "H": -3.2, "I": 4.5,
    "L": 3.8, "K": -3.9, "M": 1.9, "F": 2.8, "P": -1.6,
    "S": -0.8, "T": -0.7, "W": -0.9, "Y": -1.3, "V": 4.2,
})

TREAT_AS_HYDROPHILIC = "treat-as-hydrophilic"
REJECT = "reject"
UNKNOWN_POLICIES = (TREAT_AS_HYDROPHILIC, REJECT)

# Named residue sets used when probing which residues count as hydrophobic.
HYDROPHOBIC_SETS = ("kd_positive", "kd_including_G", "nonpolar_eleven")
_NONPOLAR_ELEVEN = frozenset("ACFGILMPVWY")


class SequenceError(ValueError):
    """Raised for malformed sequence text."""


class ScaleError(ValueError):
    """Raised for malformed or incomplete hydropathy scales."""


@dataclass(frozen=True)
class Sequence:
    id: str
    residues: tuple[str, ...]

    def __post_init__(self):
        if not self.residues:
            raise SequenceError("empty sequence")
        for code in self.residues:
            if len(code) != 1 or code not in string.ascii_uppercase:
                raise SequenceError(f"illegal residue code {code!r}")

    def __len__(self):
        return len(self.residues)

    def __str__(self):
        return "".join(self.residues)


@dataclass(frozen=True)
class HydropathyScale:
    name: str
    values: Mapping[str, float]
    threshold: float = 0.0
    unknown_policy: str = TREAT_AS_HYDROPHILIC

    def __post_init__(self):
        missing = STANDARD_RESIDUES.difference(self.values)
        if missing:
            raise ScaleError(f"missing residue(s): {''.join(sorted(missing))}")
        if not math.isfinite(self.threshold):
            raise ScaleError("threshold must be finite")
        if self.unknown_policy not in UNKNOWN_POLICIES:
            raise ScaleError(f"unknown policy {self.unknown_policy!r}")
        object.__setattr__(self, "values", MappingProxyType(dict(self.values)))

    def with_threshold(self, threshold: float) -> "HydropathyScale":
        return HydropathyScale(self.name, self.values, threshold, self.unknown_policy)

    def with_policy(self, policy: str) -> "HydropathyScale":
        return HydropathyScale(self.name, self.values, self.threshold, policy)


@dataclass(frozen=True)
class BinaryProfile:
    bits: tuple[int, ...]
    scale_name: str
    hydrophobic_count: int = field(init=False)

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("profile bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "hydrophobic_count", sum(bits))

    def __len__(self):
        return len(self.bits)

    def to_string(self) -> str:
        return "".join(map(str, self.bits))

    def to_hp(self) -> str:
        return "".join("H" if b else "P" for b in self.bits)

    @classmethod
    def from_hp(cls, text: str) -> "BinaryProfile":
        """Build a profile from an H/P string (H hydrophobic, P polar)."""
        text = "".join(text.split()).upper()
        if not text:
            raise SequenceError("empty H/P profile")
        bad = set(text) - {"H", "P"}
        if bad:
            raise SequenceError(f"illegal H/P character(s): {''.join(sorted(bad))}")
        return cls(tuple(1 if c == "H" else 0 for c in text), "hp-literal")


def parse_sequence(text: str, format: str = "raw") -> Sequence:
    """Parse raw or single-record FASTA text into a :class:`Sequence`.

    Whitespace is dropped and residues are uppercased. Multi-record FASTA is
    rejected.
    """
    if not text or not text.strip():
        raise SequenceError("empty input")
    if format == "raw":
        seq_id, body = "seq", text
    elif format == "fasta":
        lines = text.strip().splitlines()
        if not lines[0].startswith(">"):
            raise SequenceError("fasta input must start with a '>' header line")
        headers = [ln for ln in lines if ln.startswith(">")]
        if len(headers) > 1:
            raise SequenceError(f"expected one fasta record, found {len(headers)}")
        seq_id = lines[0][1:].strip()
        body = "".join(lines[1:])
    else:
        raise SequenceError(f"unknown sequence format {format!r}")

    residues = "".join(body.split()).upper()
    if not residues:
        raise SequenceError("empty sequence after stripping")
    bad = sorted(set(c for c in residues if c not in string.ascii_uppercase))
    if bad:
        raise SequenceError(f"illegal character(s) in sequence: {''.join(bad)!r}")
    return Sequence(seq_id, tuple(residues))


def builtin_kd(threshold: float = 0.0) -> HydropathyScale:
    return HydropathyScale("kyte-doolittle", KYTE_DOOLITTLE, threshold)


def parse_scale_text(text: str, name: str = "custom", threshold: float = 0.0) -> HydropathyScale:
    """Parse a ``CODE<TAB>value`` table; ``#`` lines and blank lines are skipped."""
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise ScaleError(f"line {lineno}: expected CODE<TAB>value")
        code, value = parts[0].strip().upper(), parts[1].strip()
        if len(code) != 1 or code not in string.ascii_uppercase:
            raise ScaleError(f"line {lineno}: bad residue code {code!r}")
        if code in values:
            raise ScaleError(f"line {lineno}: duplicate residue {code}")
        try:
            number = float(value)
        except ValueError:
            raise ScaleError(f"line {lineno}: unparsable value {value!r}") from None
        if not math.isfinite(number):
            raise ScaleError(f"line {lineno}: non-finite value {value!r}")
        values[code] = number
    return HydropathyScale(name, values, threshold)


def load_scale(source: str | Path = "builtin-kd", threshold: float | None = None) -> HydropathyScale:
    """Return the builtin Kyte-Doolittle scale or parse a scale file."""
    if str(source) == "builtin-kd":
        scale = builtin_kd()
    else:
        path = Path(source)
        scale = parse_scale_text(path.read_text(), name=path.stem)
    if threshold is not None:
        scale = scale.with_threshold(threshold)
    return scale


def encode_binary(seq: Sequence, scale: HydropathyScale) -> BinaryProfile:
    bits = []
    for idx, code in enumerate(seq.residues):
        value = scale.values.get(code)
        if value is None:
            if scale.unknown_policy == REJECT:
                raise SequenceError(f"residue {code!r} at position {idx + 1} not in scale {scale.name}")
            bits.append(0)
        else:
            bits.append(1 if value > scale.threshold else 0)
    return BinaryProfile(tuple(bits), scale.name)


def hydrophobic_members(hydrophobic_set: str) -> frozenset[str]:
    if hydrophobic_set == "kd_positive":
        return frozenset(c for c, v in KYTE_DOOLITTLE.items() if v > 0.0)
    if hydrophobic_set == "kd_including_G":
        return frozenset(c for c, v in KYTE_DOOLITTLE.items() if v > 0.0) | {"G"}
    if hydrophobic_set == "nonpolar_eleven":
        return _NONPOLAR_ELEVEN
    raise ValueError(f"unknown hydrophobic set {hydrophobic_set!r}")


def profile_for_set(seq: Sequence, hydrophobic_set: str) -> BinaryProfile:
    """Binary profile where exactly the members of a named set are hydrophobic."""
    members = hydrophobic_members(hydrophobic_set)
    return BinaryProfile(tuple(1 if c in members else 0 for c in seq.residues), hydrophobic_set)


def profile_from_bits(bits: Iterable[int], scale_name: str = "bits") -> BinaryProfile:
    return BinaryProfile(tuple(bits), scale_name)


def fixture_5cyt() -> Sequence:
    """The bundled 104-residue 5CYT heme-protein sequence."""
    text = resources.files("hydrofold").joinpath("data/5cyt.fasta").read_text()
    seq = parse_sequence(text, "fasta")
    return Sequence("5CYT", seq.residues)
