"""Randomized cross-validation harness and the frozen regression corpus.

The harness samples generic rational length vectors, runs all four pairing
engines plus the volume-derivative bridge on them, and exercises the exact
invariances (permutation, square exchange, chamber perturbation, scaling).
Every run is reproducible from its seed.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .lengths import ExponentVector, LengthVector, chamber_data, is_generic
from .oracles import pairing_konno_takakura, pairing_recursive, pairing_yoshida
from .pairings import PairingQuery, pairing_explicit
from .volume import volume_mixed_partial

ENGINE_NAMES = ("explicit", "recursion", "kt", "yoshida")


def run_engine(name: str, query: PairingQuery, threads: int = 1) -> int:
    if name == "explicit":
        return pairing_explicit(query, threads=threads).value
    if name == "recursion":
        return pairing_recursive(query).value
    if name == "kt":
        return pairing_konno_takakura(query).value
    if name == "yoshida":
        return pairing_yoshida(query).value
    raise ValueError(f"unknown engine {name!r}")


def run_all_engines(query: PairingQuery, threads: int = 1) -> dict[str, int]:
    return {name: run_engine(name, query, threads) for name in ENGINE_NAMES}


def random_generic_lengths(rng: random.Random, m: int) -> LengthVector:
    """Rejection-sample entries p/q, p in [1,40] and q in [1,8], until generic."""
    while True:
        cand = LengthVector(
            tuple(Fraction(rng.randint(1, 40), rng.randint(1, 8)) for _ in range(m))
        )
        if is_generic(cand):
            return cand


def random_exponents(rng: random.Random, m: int) -> ExponentVector:
    counts = [0] * m
    for _ in range(m - 3):
        counts[rng.randrange(m)] += 1
    return ExponentVector(tuple(counts))


@dataclass
class Mismatch:
    lengths: str
    exponents: str
    detail: str

    def __str__(self) -> str:
        return f"--lengths {self.lengths} --exponents {self.exponents}: {self.detail}"


@dataclass
class VerifyReport:
    cases: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _check_invariances(
    query: PairingQuery, base: int, rng: random.Random, report: VerifyReport
) -> None:
    alpha, k = query.lengths, query.exponents
    m = query.m

    def expect(value: int, detail: str) -> None:
        if value != base:
            report.mismatches.append(
                Mismatch(alpha.serialize(), k.serialize(), f"{detail}: {value} != {base}")
            )

    perm = list(range(m))
    rng.shuffle(perm)
    permuted = PairingQuery(alpha.permuted(perm), k.permuted(perm))
    expect(pairing_explicit(permuted).value, f"permutation {tuple(perm)}")

    lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    expect(
        pairing_explicit(PairingQuery(alpha.scaled(lam), k)).value,
        f"scaling by {lam}",
    )

    radius = chamber_data(alpha).radius
    nudged = []
    for a in alpha:
        bound = min(radius / (2 * m), a / 2)
        nudged.append(a + rng.choice((-1, 1)) * bound / 2)
    expect(
        pairing_explicit(PairingQuery(LengthVector(tuple(nudged)), k)).value,
        "chamber perturbation",
    )

    donors = [i for i, e in enumerate(k) if e >= 2]
    if donors:
        i = rng.choice(donors)
        j = rng.randrange(m)
        moved = list(k)
        moved[i] -= 2
        moved[j] += 2
        expect(
            pairing_explicit(PairingQuery(alpha, ExponentVector(tuple(moved)))).value,
            f"square exchange {i}->{j}",
        )


def run_random_verification(
    max_m: int,
    cases: int,
    seed: int,
    threads: int = 1,
    min_m: int = 3,
    volume_check: bool = True,
    invariants: bool = True,
) -> VerifyReport:
    """Cross-validate every engine on seeded random generic queries."""
    rng = random.Random(seed)
    report = VerifyReport()
    for _ in range(cases):
        m = rng.randint(min_m, max_m)
        alpha = random_generic_lengths(rng, m)
        k = random_exponents(rng, m)
        query = PairingQuery(alpha, k)
        report.cases += 1
        values = run_all_engines(query, threads=threads)
        if len(set(values.values())) != 1:
            report.mismatches.append(
                Mismatch(alpha.serialize(), k.serialize(), f"engines disagree: {values}")
            )
            continue
        base = values["explicit"]
        if volume_check:
            dv = volume_mixed_partial(alpha, k)
            if dv != base:
                report.mismatches.append(
                    Mismatch(
                        alpha.serialize(),
                        k.serialize(),
                        f"volume mixed partial {dv} != pairing {base}",
                    )
                )
        if invariants:
            _check_invariances(query, base, rng, report)
    return report


def corpus_cases() -> list[dict]:
    """The frozen regression corpus shipped with the package."""
    text = resources.files("polyspace").joinpath("data/corpus.json").read_text()
    return json.loads(text)["cases"]


def run_corpus(threads: int = 1) -> VerifyReport:
    """Replay every corpus case through all four engines."""
    report = VerifyReport()
    for case in corpus_cases():
        alpha = LengthVector.parse(case["lengths"])
        k = ExponentVector.parse(case["exponents"])
        expected = int(case["expected"])
        report.cases += 1
        values = run_all_engines(PairingQuery(alpha, k), threads=threads)
        bad = {name: v for name, v in values.items() if v != expected}
        if bad:
            report.mismatches.append(
                Mismatch(
                    case["lengths"],
                    case["exponents"],
                    f"{case['label']}: expected {expected}, got {bad}",
                )
            )
    return report
