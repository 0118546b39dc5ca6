"""Command-line front end: input parsing, command dispatch and reports.

Input files hold either a substitution::

    alphabet: a b          # optional
    a -> a b a
    b -> b a a b

or a directive over named morphisms::

    [tau]
    0 -> 0
    1 -> 1 0
    [sigma]
    0 -> 0 1
    1 -> 1
    directive: tau sigma sigma tau
    seed: 0

The compact form ``a->aba`` is accepted when every letter is one character.
Exit status: 0 success, 1 analysis error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import analysis, properize as prop_mod, returnwords, sadic
from .corpus import CORPUS
from .exactlinalg import IntegerMatrix
from .morphism import (Morphism, NotPrimitiveError, Substitution, fixed_point_prefix,
                       seeded_power)
from .words import Alphabet, Word

log = logging.getLogger(__name__)

EXIT_OK, EXIT_ANALYSIS, EXIT_USAGE = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class UsageError(ValueError):
    pass


ANALYSIS_ERRORS = (NotPrimitiveError, returnwords.DecompositionError, returnwords.PrefixTooShort,
                   sadic.DirectiveTooShort, sadic.InsufficientPrecision,
                   analysis.IntegralityError, analysis.NotProperError,
                   prop_mod.ProperizationError, ValueError)


# ---------------------------------------------------------------- parsing

@dataclass
class _Rule:
    letter: str
    rhs: list[tuple[str, int]]   # (token, column)
    line: int
    column: int


@dataclass
class _Block:
    name: str | None
    line: int
    alphabet: list[str] | None = None
    rules: list[_Rule] | None = None


def _tokens(text: str, offset: int) -> list[tuple[str, int]]:
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], offset + i + 1))
        i = j
    return out


def _build_morphism(block: _Block, as_substitution: bool) -> Morphism:
    rules = block.rules or []
    if not rules:
        raise ParseError("no rules" + (f" in [{block.name}]" if block.name else ""), block.line, 1)
    seen: dict[str, _Rule] = {}
    for r in rules:
        if r.letter in seen:
            raise ParseError(f"duplicate rule for letter {r.letter!r}", r.line, r.column)
        seen[r.letter] = r
    if block.alphabet is not None:
        domain = block.alphabet
        for r in rules:
            if r.letter not in domain:
                raise ParseError(f"unknown letter {r.letter!r}", r.line, r.column)
        missing = [c for c in domain if c not in seen]
        if missing and as_substitution:
            raise ParseError(f"missing image for letters {missing}", block.line, 1)
        domain = [c for c in domain if c in seen]
    else:
        domain = [r.letter for r in rules]
    letters = block.alphabet if block.alphabet is not None else domain
    compact = all(len(c) == 1 for c in letters)

    def split(r: _Rule) -> list[tuple[str, int]]:
        if not compact:
            return r.rhs
        return [(ch, col + k) for tok, col in r.rhs for k, ch in enumerate(tok)]

    images = {r.letter: split(r) for r in rules}
    if as_substitution:
        codomain = list(letters)
        known = set(codomain)
        for r in rules:
            for tok, col in images[r.letter]:
                if tok not in known:
                    raise ParseError(f"unknown letter {tok!r}", r.line, col)
    else:
        codomain = list(letters)
        for r in rules:
            for tok, _ in images[r.letter]:
                if tok not in codomain:
                    codomain.append(tok)
    dom, cod = Alphabet.of(domain), Alphabet.of(codomain)
    words = tuple(cod.word([t for t, _ in images[c]]) for c in domain)
    if as_substitution:
        return Substitution(dom, words)
    if dom == cod:
        return Substitution(dom, words)
    return Morphism(dom, cod, words)


def parse_spec(text: str) -> Substitution | sadic.DirectiveSequence:
    blocks: list[_Block] = [_Block(None, 1)]
    directive: tuple[list[str], int] | None = None
    seed: tuple[str, int] | None = None
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        block = blocks[-1]
        if stripped.startswith("["):
            if not stripped.endswith("]") or len(stripped) < 3:
                raise ParseError("malformed section header", n, col0)
            name = stripped[1:-1].strip()
            if any(b.name == name for b in blocks):
                raise ParseError(f"duplicate section [{name}]", n, col0)
            blocks.append(_Block(name, n))
            continue
        key, sep, rest = stripped.partition(":")
        if sep and "->" not in stripped and key.strip() in ("alphabet", "directive", "seed"):
            offset = line.index(":") + 1
            toks = _tokens(line[offset:], offset)
            key = key.strip()
            if not toks:
                raise ParseError(f"empty {key} line", n, offset + 1)
            if key == "alphabet":
                if block.alphabet is not None or block.rules:
                    raise ParseError("alphabet line must come first in its section", n, col0)
                names = [t for t, _ in toks]
                for i, (t, c) in enumerate(toks):
                    if t in names[:i]:
                        raise ParseError(f"duplicate letter {t!r} in alphabet", n, c)
                block.alphabet = names
            elif key == "directive":
                directive = ([t for t, _ in toks], n)
            else:
                if len(toks) != 1:
                    raise ParseError("seed must be a single letter", n, toks[1][1])
                seed = (toks[0][0], n)
            continue
        if "->" not in line:
            raise ParseError("expected 'letter -> image'", n, col0)
        arrow = line.index("->")
        lhs = _tokens(line[:arrow], 0)
        if len(lhs) != 1:
            raise ParseError("left-hand side must be a single letter", n, lhs[1][1] if lhs else col0)
        rhs = _tokens(line[arrow + 2:], arrow + 2)
        if not rhs:
            raise ParseError(f"empty image for letter {lhs[0][0]!r}", n, arrow + 3)
        if block.rules is None:
            block.rules = []
        block.rules.append(_Rule(lhs[0][0], rhs, n, lhs[0][1]))

    named = blocks[1:]
    if not named:
        if directive or seed:
            raise ParseError("directive/seed given without morphism sections", (directive or seed)[1], 1)
        return _build_morphism(blocks[0], as_substitution=True)
    if blocks[0].rules or blocks[0].alphabet:
        raise ParseError("rules outside a section in a directive file", blocks[0].line, 1)
    if directive is None or seed is None:
        raise ParseError("directive files need 'directive:' and 'seed:' lines")
    morphisms = {b.name: _build_morphism(b, as_substitution=False) for b in named}
    for name in directive[0]:
        if name not in morphisms:
            raise ParseError(f"unknown morphism {name!r} in directive", directive[1], 1)
    try:
        return sadic.DirectiveSequence(morphisms, tuple(directive[0]), seed[0])
    except ValueError as exc:
        raise ParseError(str(exc), directive[1], 1) from None


def format_spec(s: Substitution) -> str:
    lines = ["alphabet: " + " ".join(s.alphabet)]
    lines += [f"{c} -> {img.spaced()}" for c, img in zip(s.alphabet, s.images)]
    return "\n".join(lines) + "\n"


def load_input(source: str) -> Substitution | sadic.DirectiveSequence:
    """A file path, a built-in corpus name, or an inline spec with ';' between lines."""
    path = Path(source)
    if path.is_file():
        return parse_spec(path.read_text())
    if source in CORPUS:
        return CORPUS[source]
    if "->" in source:
        return parse_spec(source.replace(";", "\n"))
    raise UsageError(f"no such file or built-in: {source!r} (built-ins: {', '.join(CORPUS)})")


def _substitution(source: str) -> Substitution:
    obj = load_input(source)
    if not isinstance(obj, Substitution):
        raise UsageError(f"{source}: expected a substitution, got a directive")
    return obj


# ---------------------------------------------------------------- reports

def _ints(xs) -> list[str]:
    return [str(x) for x in xs]


def _matrix(m: IntegerMatrix) -> list[list[str]]:
    return [_ints(row) for row in m.rows]


def _periodicity(status) -> dict:
    return {
        "status": status.label,
        "periodic": status.periodic,
        "period": str(status.period) if status.period is not None else None,
        "checked_depth": status.checked_depth,
        "prefix_length": status.prefix_length,
        "certified": False,
    }


def verdict_report(v: analysis.Verdict) -> dict:
    out = {
        "substitution": v.substitution.as_dict(),
        "periodicity": _periodicity(v.periodicity),
        "path": v.path,
        "seed_power": v.seed_power,
        "matrix": _matrix(v.matrix),
        "r": v.r,
        "Q": _ints(v.Q.coeffs),
        "Q_text": str(v.Q),
        "g": str(v.g),
        "F_finite": v.f_finite,
        "Fstar_finite": v.fstar_finite,
        "spectrum_primes": _ints(v.spectrum_primes),
        "candidate_primes": None if v.candidate_primes is None else _ints(sorted(v.candidate_primes)),
        "properization": None,
        "constant_length": None,
        "warnings": list(v.warnings),
        "valid": v.valid,
    }
    if v.properization is not None:
        p = v.properization
        out["properization"] = {"pass_through": p.pass_through, "k": p.k, "zeta_power": p.zeta_power,
                                "B_size": len(p.B), "escalations": list(p.escalations)}
    if v.constant_length is not None:
        c = v.constant_length
        out["constant_length"] = {"l": str(c.l), "h": str(c.h),
                                  "occurrence_gcd": str(c.height.occurrence_gcd),
                                  "stabilized_at": c.height.stabilized_at,
                                  "odometer_base": [str(c.h), str(c.l)]}
    return out


_INT_STR = {"type": "string", "pattern": "^-?[0-9]+$"}
VERDICT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["substitution", "periodicity", "path", "seed_power", "matrix", "r", "Q", "Q_text",
                 "g", "F_finite", "Fstar_finite", "spectrum_primes", "candidate_primes",
                 "properization", "constant_length", "warnings", "valid"],
    "properties": {
        "substitution": {"type": "object", "additionalProperties": {"type": "string"}},
        "periodicity": {
            "type": "object",
            "required": ["status", "periodic", "period", "checked_depth", "prefix_length", "certified"],
            "properties": {
                "status": {"type": "string"},
                "periodic": {"type": "boolean"},
                "period": {"type": ["string", "null"]},
                "checked_depth": {"type": "integer"},
                "prefix_length": {"type": "integer"},
                "certified": {"type": "boolean"},
            },
        },
        "path": {"enum": ["constant-length", "proper", "properized"]},
        "seed_power": {"type": "integer", "minimum": 1},
        "matrix": {"type": "array", "items": {"type": "array", "items": _INT_STR}},
        "r": {"type": "integer", "minimum": 0},
        "Q": {"type": "array", "items": _INT_STR, "minItems": 2},
        "Q_text": {"type": "string"},
        "g": _INT_STR,
        "F_finite": {"type": "boolean"},
        "Fstar_finite": {"type": "boolean"},
        "spectrum_primes": {"type": "array", "items": _INT_STR},
        "candidate_primes": {"type": ["array", "null"], "items": _INT_STR},
        "properization": {
            "type": ["object", "null"],
            "required": ["pass_through", "k", "zeta_power", "B_size", "escalations"],
        },
        "constant_length": {
            "type": ["object", "null"],
            "required": ["l", "h", "occurrence_gcd", "stabilized_at", "odometer_base"],
            "properties": {
                "l": _INT_STR, "h": _INT_STR, "occurrence_gcd": _INT_STR,
                "odometer_base": {"type": "array", "items": _INT_STR},
            },
        },
        "warnings": {"type": "array", "items": {"type": "string"}},
        "valid": {"type": "boolean"},
    },
}


def _finite(flag: bool) -> str:
    return "finite" if flag else "infinite"


def format_verdict(v: analysis.Verdict) -> str:
    lines = [
        f"substitution: {v.substitution}",
        f"periodicity:  {v.periodicity.label}",
        f"path:         {v.path}" + (f" (seed power {v.seed_power})" if v.seed_power > 1 else ""),
    ]
    if v.properization is not None and not v.properization.pass_through:
        p = v.properization
        lines.append(f"properized:   |B| = {len(p.B)}, k = {p.k}" +
                     (", zeta∘zeta" if p.zeta_power == 2 else ""))
    if v.constant_length is not None:
        c = v.constant_length
        lines.append(f"length l:     {c.l}; height h = {c.h} (occurrence gcd stable from prefix "
                     f"{c.height.stabilized_at}); odometer base {c.odometer}")
    lines += [
        "matrix M:     " + str(v.matrix).replace("\n", "\n              "),
        f"r = {v.r}, Q = {v.Q}, g = {v.g}",
        f"Cantor factors (F):       {_finite(v.f_finite)}",
        f"non-periodic (F*):        {_finite(v.fstar_finite)}",
        "spectrum primes:          " + (", ".join(map(str, v.spectrum_primes)) or "none"),
    ]
    lines += [f"warning: {w}" for w in v.warnings]
    return "\n".join(lines)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------- commands

def _analyze_one(source: str, horizon: int) -> tuple[str, int, dict | None, str]:
    try:
        v = analysis.cantor_factor_verdict(_substitution(source), horizon)
    except (ParseError, UsageError) as exc:
        return source, EXIT_USAGE, None, str(exc)
    except ANALYSIS_ERRORS as exc:
        return source, EXIT_ANALYSIS, None, f"{type(exc).__name__}: {exc}"
    return source, EXIT_OK, verdict_report(v), format_verdict(v)


def cmd_analyze(args) -> int:
    if len(args.inputs) == 1:
        results = [_analyze_one(args.inputs[0], args.horizon)]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_analyze_one, args.inputs, [args.horizon] * len(args.inputs)))
    status = max(code for _, code, _, _ in results)
    if args.json:
        reports = [rep if code == EXIT_OK else {"input": src, "error": msg}
                   for src, code, rep, msg in results]
        print(json.dumps(reports[0] if len(reports) == 1 else reports, indent=2))
    else:
        for src, code, _, msg in results:
            if len(results) > 1:
                print(f"== {src}")
            print(msg if code == EXIT_OK else f"error: {msg}", file=sys.stdout if code == EXIT_OK else sys.stderr)
    return status


def _table(m: Morphism) -> list[str]:
    width = max(len(c) for c in m.domain)
    return [f"  {c:<{width}} -> {img.spaced()}" for c, img in zip(m.domain, m.images)]


def cmd_properize(args) -> int:
    r = prop_mod.properize(_substitution(args.input))
    payload = {
        "pass_through": r.pass_through, "k": r.k, "seed_power": r.seed_power,
        "zeta_power": r.zeta_power, "proper_letter": r.proper_letter,
        "B": list(r.B), "phi": r.phi.as_dict(), "psi": r.psi.as_dict(), "zeta": r.zeta.as_dict(),
        "phi_psi_ok": r.phi_psi_ok(), "escalations": list(r.escalations),
    }
    lines = [f"pass-through: {r.pass_through}"]
    if not r.pass_through:
        lines.append(f"k = {r.k}" + (f", seed power {r.seed_power}" if r.seed_power > 1 else "") +
                     (", zeta = (construction)∘(construction)" if r.zeta_power == 2 else ""))
    lines += [f"B = {{{', '.join(r.B)}}}", "phi:"] + _table(r.phi)
    lines += ["psi:"] + _table(r.psi) + ["zeta:"] + _table(r.zeta)
    lines.append(f"proper letter: {r.proper_letter}; phi∘psi = theta: {r.phi_psi_ok()}")
    lines += [f"note: {e}" for e in r.escalations]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_return_words(args) -> int:
    s = _substitution(args.input)
    k, t = seeded_power(s)
    anchor_letters = t.alphabet.word(args.anchor)
    if len(anchor_letters) == 1 and anchor_letters.tokens[0] == t.seed:
        d = returnwords.return_words_closure(t)
        coding = d.coding
    else:
        coding = returnwords.return_words_in_prefix(fixed_point_prefix(t, args.prefix_len), anchor_letters)
    payload = {"anchor": str(coding.u), "certified": coding.certified,
               "return_words": {j: w.spaced() for j, w in zip(coding.theta.domain, coding.return_words)}}
    lines = [f"anchor {coding.u}: {coding.size} return words "
             f"({'certified' if coding.certified else f'non-certified, prefix {args.prefix_len}'})"]
    lines += _table(coding.theta)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_derived(args) -> int:
    s = _substitution(args.input)
    k, t = seeded_power(s)
    d = returnwords.return_words_closure(t)
    payload = {"seed": str(d.coding.u), "seed_power": k, "tau_power": d.power,
               "theta": d.coding.theta.as_dict(), "tau": d.tau.as_dict(),
               "certificate": d.check(), "certified": d.coding.certified}
    lines = [f"anchor {d.coding.u}" + (f" (sigma^{k})" if k > 1 else "") +
             (f"; tau raised to power {d.power}" if d.power > 1 else ""), "theta:"]
    lines += _table(d.coding.theta) + ["tau:"] + _table(d.tau)
    lines.append(f"sigma∘theta = theta∘tau: {d.check()}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    s = _substitution(args.input)
    if args.p < 2 or not analysis.is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    if args.nmax < 1:
        raise UsageError("nmax must be positive")
    r = prop_mod.properize(s)
    checks = analysis.power_in_spectrum(r.zeta, args.p, args.nmax)
    M = analysis.transposed_matrix(r.zeta)
    restricted = analysis.restricted_char_poly(M)
    depth = analysis.spectrum_depth(M, args.p)
    divides = restricted.g % args.p == 0
    payload = {"p": str(args.p), "g": str(restricted.g), "p_divides_g": divides,
               "decisive_n": depth,
               "checks": [{"n": c.n, "holds": c.holds, "witness": c.witness, "bound": c.bound}
                          for c in checks]}
    lines = [f"p = {args.p}, g = {restricted.g}: p | g is {divides} (decisive at n = {depth})"]
    for c in checks:
        w = f"M^{c.witness} e" if c.holds else "none"
        lines.append(f"  n={c.n}: p^n | M^k e for some k <= {c.bound}: {c.holds} (witness {w})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _parse_cf(text: str) -> sadic.ContinuedFraction:
    try:
        return sadic.ContinuedFraction.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad --cf: {exc}") from None


def cmd_sturmian(args) -> int:
    cf = _parse_cf(args.cf)
    d = sadic.sturmian_directive(cf, args.len)
    w = sadic.sadic_prefix(d, args.len)
    payload = {"cf": str(cf), "exponents": sadic.sturmian_exponents(cf), "prefix": str(w),
               "directive_length": len(d)}
    lines = [f"alpha = {cf}", f"prefix ({args.len}): {w}"]
    status = EXIT_OK
    if args.check:
        max_n = min(12, args.len)
        result = sadic.sturmian_language_check(cf, args.len, max_n)
        ok = all(result.values())
        payload["language_check"] = {"max_n": max_n, "passed": ok,
                                     "failed_n": [n for n, v in result.items() if not v]}
        lines.append(f"rotation-coding language check (n <= {max_n}): {'pass' if ok else 'FAIL'}")
        status = EXIT_OK if ok else EXIT_ANALYSIS
    if args.s0 is not None:
        windows = sadic.primitive_window_check(d, args.s0)
        payload["primitive_windows"] = {"s0": args.s0, "all": all(windows), "windows": windows}
        lines.append(f"primitive windows (s0={args.s0}): {sum(windows)}/{len(windows)} pass")
    _emit(args, payload, "\n".join(lines))
    return status


def _prefix_for(args, n: int) -> Word:
    if args.cf:
        cf = _parse_cf(args.cf)
        return sadic.sadic_prefix(sadic.sturmian_directive(cf, n), n)
    if args.input is None:
        raise UsageError("give an input file/built-in or --cf")
    obj = load_input(args.input)
    if isinstance(obj, sadic.DirectiveSequence):
        return sadic.sadic_prefix(obj, n)
    return fixed_point_prefix(obj, n)


def cmd_lr_estimate(args) -> int:
    prefix = _prefix_for(args, args.prefix_len)
    est = sadic.lr_estimate(prefix, args.max_anchor)
    payload = {"max_ratio": str(est.max_ratio), "witness": est.witness,
               "anchor_range": list(est.anchor_range), "prefix_length": est.prefix_length,
               "skipped": est.skipped, "certified": est.certified}
    lines = [f"max |w|/|u| = {est.max_ratio} (witness anchor {est.witness}) over anchors of length "
             f"{est.anchor_range[0]}..{est.anchor_range[1]}, prefix {est.prefix_length}; "
             f"{est.skipped} anchors skipped; non-certified"]
    status = EXIT_OK
    if args.k is not None:
        diag = sadic.lr_diagnostics(prefix, args.k, args.max_n)
        payload["diagnostics"] = {"K": args.k, "max_n": args.max_n, "passed": diag.passed,
                                  "checks": [{"name": c.name, "passed": c.passed, "witness": c.witness}
                                             for c in diag.checks]}
        lines.append(f"LR diagnostics K={args.k}, n <= {args.max_n}:")
        lines += [f"  {c.name:<18} {'pass' if c.passed else 'FAIL'}" +
                  (f"  witness {c.witness}" if c.witness else "") for c in diag.checks]
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_sadic_decompose(args) -> int:
    n = args.prefix_len or returnwords.sadic_required_length(args.k, args.depth)
    prefix = _prefix_for(args, n)
    dec = returnwords.sadic_decomposition(prefix, args.k, args.depth)
    payload = {"alpha": dec.alpha, "prefix_length": n,
               "lambdas": [lam.as_dict() for lam in dec.lambdas],
               "recodings_ok": all(r.check() for r in dec.recodings),
               "reconstruction_length": len(dec.reconstruction),
               "reconstruction_ok": dec.reconstruction_ok, "certified": False}
    lines = [f"alpha = {dec.alpha}, prefix {n}"]
    for i, lam in enumerate(dec.lambdas):
        lines.append(f"lambda_{i}:")
        lines += _table(lam)
    lines.append(f"theta_(n-1)∘lambda_n = theta_n: {payload['recodings_ok']}")
    lines.append(f"lambda_0...lambda_{args.depth}(1) is a prefix of the input: {dec.reconstruction_ok}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if dec.reconstruction_ok and payload["recodings_ok"] else EXIT_ANALYSIS


def cmd_bound(args) -> int:
    if args.K < 1:
        raise UsageError("K must be at least 1")
    b = analysis.factor_count_bound(args.K)
    text = str(b)
    payload = {"K": args.K, "bound": text, "digits": len(text)}
    shown = text if len(text) <= 120 else f"{text[:40]}...{text[-20:]} ({len(text)} digits)"
    _emit(args, payload, shown)
    return EXIT_OK


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subshift", description="Cantor factors of substitution subshifts")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.set_defaults(func=func)
        return p

    p = cmd("analyze", cmd_analyze, "decide finiteness of Cantor factors")
    p.add_argument("inputs", nargs="+", help="files, built-in names or inline specs")
    p.add_argument("--horizon", type=int, default=50, help="periodicity probe horizon")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for batch runs")

    p = cmd("properize", cmd_properize, "build the proper substitution zeta")
    p.add_argument("input")

    p = cmd("return-words", cmd_return_words, "return words to an anchor")
    p.add_argument("input")
    p.add_argument("anchor")
    p.add_argument("--prefix-len", type=int, default=10_000)

    p = cmd("derived", cmd_derived, "derived substitution tau")
    p.add_argument("input")

    p = cmd("spectrum", cmd_spectrum, "test powers of a prime in the periodic spectrum")
    p.add_argument("input")
    p.add_argument("p", type=int)
    p.add_argument("nmax", type=int)

    p = cmd("sturmian", cmd_sturmian, "Sturmian prefix from a continued fraction")
    p.add_argument("--cf", required=True, help="comma-separated coefficients a0,a1,...")
    p.add_argument("--len", type=int, default=100)
    p.add_argument("--check", action="store_true", help="compare with the rotation coding")
    p.add_argument("--s0", type=int, default=None, help="run the primitive window check")

    for name, func, help_ in (("lr-estimate", cmd_lr_estimate, "empirical linear-recurrence constant"),
                              ("sadic-decompose", cmd_sadic_decompose, "nested return-word recodings")):
        p = cmd(name, func, help_)
        p.add_argument("input", nargs="?")
        p.add_argument("--cf", default=None)
        if name == "lr-estimate":
            p.add_argument("--prefix-len", type=int, default=10_000)
            p.add_argument("--max-anchor", type=int, default=50)
            p.add_argument("--k", type=int, default=None, help="also run diagnostics for this K")
            p.add_argument("--max-n", type=int, default=30)
        else:
            p.add_argument("--prefix-len", type=int, default=None)
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--depth", type=int, default=2)

    p = cmd("bound", cmd_bound, "explicit bound on the number of factors for constant K")
    p.add_argument("K", type=int)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ANALYSIS_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
