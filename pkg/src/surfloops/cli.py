"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 internal invariant
violation (including a failed identity check).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

from . import diagrams, loopops
from .freegroup import (
    FreeGroupError,
    brute_force_conjugator,
    cyclic_word,
    format_word,
    invert,
    is_cyclically_reduced,
    parse_word,
    reduced_words,
    shortest_common_conjugator,
    simultaneous_conjugacy,
)
from .intersections import IntersectionError
from .sampling import conjugacy_instance, random_cyclic_word
from .surface import SurfaceError, SurfaceModel, parse_surface

DEFAULT_SUITE_SURFACES = ["genus:1,boundary:1", "spheres:3", "genus:2,boundary:1"]
CENSUS_WARN_LEN = 8


class UsageError(Exception):
    pass


@dataclass
class Report:
    word: str
    surface: str
    core: str
    primitive_root: str
    exponent: int
    mu: List[dict]
    t: int
    m: int
    delta: List[dict]
    is_power_of_simple: bool
    warnings: List[str] = field(default_factory=list)
    type2_raw: Optional[List[dict]] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [
            f"word: {self.word}",
            f"surface: {self.surface}",
            f"core: {self.core}",
            f"primitive root: {self.primitive_root}  exponent: {self.exponent}",
            f"mu ({len(self.mu)} terms, t = {self.t}):",
        ]
        lines += [f"  {d['coefficient']:+d} [{d['x']} * {d['y']}]" for d in self.mu]
        lines.append(f"delta ({len(self.delta)} terms):" if self.delta else "delta: 0")
        lines += [f"  {d['coefficient']:+d} {d['left']} (x) {d['right']}" for d in self.delta]
        lines.append(f"m: {self.m}")
        lines.append(f"power of simple: {str(self.is_power_of_simple).lower()}")
        if self.type2_raw is not None:
            lines.append("type 2 terms before cancellation:")
            lines += [f"  {d['coefficient']:+d} [{d['x']} * {d['y']}]" for d in self.type2_raw]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def _wedges(terms) -> List[dict]:
    return [{"x": format_word(t.x), "y": format_word(t.y), "coefficient": t.coefficient}
            for t in terms]


def build_report(word, model: SurfaceModel, include_type2: bool = False,
                 text: Optional[str] = None) -> Report:
    word = tuple(word)
    warnings = []
    if not is_cyclically_reduced(word):
        warnings.append("input is not cyclically reduced; results refer to its conjugacy class")
    result = loopops.mu(word, model, include_type2=include_type2)
    delta = loopops.turaev_cobracket(word, model)
    return Report(
        word=text if text is not None else format_word(word),
        surface=model.spec(),
        core=str(cyclic_word(word)),
        primitive_root=format_word(result.primitive_root),
        exponent=result.exponent,
        mu=_wedges(result.terms),
        t=result.t,
        m=result.t // 2 + result.exponent - 1,
        delta=[{"left": str(t.left), "right": str(t.right), "coefficient": t.coefficient}
               for t in delta],
        is_power_of_simple=result.t == 0,
        warnings=warnings,
        type2_raw=_wedges(result.type2_raw) if include_type2 else None,
    )


def _parse_inputs(surface: str, words: Sequence[str]):
    try:
        model = parse_surface(surface)
        parsed = [parse_word(w, model.rank) for w in words]
    except (SurfaceError, FreeGroupError) as exc:
        raise UsageError(str(exc)) from exc
    for text, w in zip(words, parsed):
        if not w:
            raise UsageError(f"{text!r} represents the trivial class")
    return model, parsed


def cmd_compute(args) -> int:
    model, (word,) = _parse_inputs(args.surface, [args.word])
    report = build_report(word, model, args.include_type2, text=args.word)
    print(report.to_json() if args.format == "json" else report.to_text())
    return 0


def cmd_bracket(args) -> int:
    model, (w1, w2) = _parse_inputs(args.surface, args.words)
    terms = loopops.goldman_bracket(w1, w2, model)
    out = {
        "words": list(args.words),
        "surface": model.spec(),
        "bracket": [{"class": str(t.value), "coefficient": t.coefficient} for t in terms],
    }
    if args.format == "json":
        print(json.dumps(out, sort_keys=True))
    elif terms:
        print("\n".join(f"{t.coefficient:+d} {t.value}" for t in terms))
    else:
        print("0")
    return 0


# -- census -----------------------------------------------------------------

def census_words(rank: int, max_len: int, identify_inverses: bool):
    seen = set()
    for w in reduced_words(rank, max_len):
        if not w or not is_cyclically_reduced(w):
            continue
        key = cyclic_word(w)
        if identify_inverses:
            key = min(key, cyclic_word(invert(w)), key=lambda c: c.sort_key())
        seen.add(key)
    return [c.letters for c in sorted(seen, key=lambda c: c.sort_key())]


def census_line(item) -> tuple:
    spec, word = item
    model = parse_surface(spec)
    result = loopops.mu(word, model)
    delta = loopops.turaev_cobracket(word, model)
    record = {
        "word": format_word(word),
        "exponent": result.exponent,
        "t": result.t,
        "m": result.t // 2 + result.exponent - 1,
        "mu_terms": len(result.terms),
        "delta_terms": len(delta),
        "power_of_simple": result.t == 0,
        "delta_zero_mu_nonzero": not delta and result.t > 0,
    }
    return cyclic_word(word).sort_key(), json.dumps(record, sort_keys=True)


def cmd_census(args) -> int:
    try:
        model = parse_surface(args.surface)
    except SurfaceError as exc:
        raise UsageError(str(exc)) from exc
    if args.input:
        try:
            with open(args.input) as fh:
                texts = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
            words = [parse_word(t, model.rank) for t in texts]
        except OSError as exc:
            raise UsageError(str(exc)) from exc
        except FreeGroupError as exc:
            raise UsageError(str(exc)) from exc
        classes = {}
        for w in words:
            if not w:
                raise UsageError("input contains the trivial class")
            key = cyclic_word(w)
            if args.identify_inverses:
                key = min(key, cyclic_word(invert(w)), key=lambda c: c.sort_key())
            classes[key] = key.letters
        words = [classes[k] for k in sorted(classes, key=lambda c: c.sort_key())]
    elif args.max_len is not None:
        if args.max_len > CENSUS_WARN_LEN:
            print(f"warning: max length {args.max_len} may take a long time",
                  file=sys.stderr)
        words = census_words(model.rank, args.max_len, args.identify_inverses)
    else:
        raise UsageError("census needs --max-len or --input")

    items = [(model.spec(), w) for w in words]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            lines = list(pool.map(census_line, items, chunksize=16))
    else:
        lines = [census_line(it) for it in items]
    lines.sort(key=lambda e: e[0])

    try:
        with open(args.out, "w") as fh:
            for _, line in lines:
                fh.write(line + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    records = [json.loads(line) for _, line in lines]
    summary = {
        "classes": len(records),
        "power_of_simple": sum(r["power_of_simple"] for r in records),
        "delta_zero_mu_nonzero": sum(r["delta_zero_mu_nonzero"] for r in records),
    }
    print(json.dumps(summary, sort_keys=True))
    return 0


# -- verify -----------------------------------------------------------------

def _diagram_trial(suite: str, rng: random.Random, models, trial: int, max_len: int):
    model = models[trial % len(models)]
    w = random_cyclic_word(rng, model.rank, max_len, primitive=True)
    d = diagrams.from_word(w, model)
    if suite == "coskew":
        report = diagrams.verify_coskew(d)
    elif suite == "cojacobi":
        report = diagrams.verify_cojacobi(d)
    else:
        report = diagrams.verify_factorization(d, model)
    return report.outcome, f"--surface {model.spec()} --word {format_word(w)}"


def _oracle_trial(rng: random.Random):
    x, y, x2, y2 = conjugacy_instance(rng)
    fast = simultaneous_conjugacy(x, y, x2, y2)
    slow = brute_force_conjugator([x, y], [x2, y2], 2, 6)
    # the search only sees conjugators of length <= 6
    ok = (fast is not None and shortest_common_conjugator(fast, x, y) <= 6) == (slow is not None)
    text = " ".join(format_word(w) or "1" for w in (x, y, x2, y2))
    return (diagrams.ZERO if ok else diagrams.VIOLATED), text


def run_suite(suite: str, trials: int, seed: int, surfaces: Sequence[str],
              max_len: int = 8):
    """Return ``(outcome counts, failures)`` for one verify suite."""
    rng = random.Random(seed)
    models = [parse_surface(s) for s in surfaces]
    counts = {}
    failures = []
    for trial in range(trials):
        if suite == "conjugacy-oracle":
            outcome, repro = _oracle_trial(rng)
        else:
            outcome, repro = _diagram_trial(suite, rng, models, trial, max_len)
        counts[outcome] = counts.get(outcome, 0) + 1
        if outcome != diagrams.ZERO:
            failures.append((outcome, repro))
    return counts, failures


SUITES = ("coskew", "cojacobi", "factorization", "conjugacy-oracle")


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    try:
        counts, failures = run_suite(args.suite, args.trials, args.seed,
                                     args.surface or DEFAULT_SUITE_SURFACES,
                                     args.max_len)
    except SurfaceError as exc:
        raise UsageError(str(exc)) from exc
    for outcome, repro in failures:
        print(f"FAIL [{outcome}] {repro}")
    passed = counts.get(diagrams.ZERO, 0)
    print(f"{args.suite}: {passed}/{args.trials} pass (seed {args.seed})")
    return 0 if not failures else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="surfloops",
        description="Goldman bracket, Turaev cobracket, mu and minimal "
                    "self-intersection numbers for loops on surfaces with boundary.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="mu, cobracket and m for one class")
    c.add_argument("--surface", required=True)
    c.add_argument("--word", required=True)
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("--include-type2", action="store_true",
                   help="also list the cancelling terms from closing up a power")
    c.set_defaults(func=cmd_compute)

    b = sub.add_parser("bracket", help="Goldman bracket of two classes")
    b.add_argument("--surface", required=True)
    b.add_argument("--words", nargs=2, required=True, metavar="WORD")
    b.add_argument("--format", choices=("json", "text"), default="text")
    b.set_defaults(func=cmd_bracket)

    s = sub.add_parser("census", help="tabulate every class up to a length")
    s.add_argument("--surface", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--max-len", type=int)
    g.add_argument("--input")
    s.add_argument("--out", required=True)
    s.add_argument("--identify-inverses", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="randomized identity and oracle checks")
    v.add_argument("--suite", required=True)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--surface", action="append",
                   help="surface for diagram suites (repeatable)")
    v.add_argument("--max-len", type=int, default=8)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IntersectionError, diagrams.DiagramError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
