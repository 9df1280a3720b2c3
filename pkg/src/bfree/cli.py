"""Command-line surface.  JSON output by default, CSV for batch pipelines.

Usage errors exit 2 (argparse); domain errors exit 1 with a JSON error
object on stderr.  Every schema carries "schema": 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import admissibility, entropy, inclusion, measures, sieve, sturmian
from .core import BinaryWord, BSet, CylinderSpec, OdometerPoint, validate_bset
from .errors import BFreeError

SCHEMA = 1


def _parse_bset(text: str) -> BSet:
    return validate_bset(sorted(int(x) for x in text.split(",")))


def _parse_window(text: str) -> tuple[int, int]:
    lo, hi = text.split(":")
    return int(lo), int(hi)


def _parse_profile(bset: BSet, s_text: str, a_text: str) -> sieve.SAProfile:
    s = tuple(int(x) for x in s_text.split(","))
    a = tuple(
        frozenset(int(x) for x in group.split(",")) for group in a_text.split(";")
    )
    return sieve.SAProfile(bset, s, a)


def _word(args) -> BinaryWord:
    return BinaryWord.from_string(args.word, getattr(args, "offset", 0) or 0)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so the subparser does not overwrite a value given before it
    common.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write output to this path instead of stdout")
    top = argparse.ArgumentParser(prog="bfree", parents=[common])
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        return p

    p = cmd("eta")
    p.add_argument("--bset", required=True)
    p.add_argument("--window", required=True)

    p = cmd("phi")
    p.add_argument("--bset", required=True)
    p.add_argument("--omega", required=True, help="comma-separated residues")
    p.add_argument("--window", required=True)

    p = cmd("admissible")
    p.add_argument("--bset", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--offset", type=int, default=0)

    p = cmd("complexity")
    p.add_argument("--bset", required=True)
    p.add_argument("--n", type=int, required=True)

    p = cmd("entropy")
    p.add_argument("--formula", choices=["bfree", "product", "generalized", "periodic"], required=True)
    p.add_argument("--bset")
    p.add_argument("--p")
    p.add_argument("--s")
    p.add_argument("--a", help="semicolon-separated residue groups, e.g. 0,2;0,3,6")
    p.add_argument("--block")

    p = cmd("mirsky")
    p.add_argument("--bset", required=True)
    p.add_argument("--ones", default="")
    p.add_argument("--zeros", default="")

    p = cmd("sample")
    p.add_argument("--measure", choices=["mirsky", "mme", "product", "generalized"], required=True)
    p.add_argument("--bset", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--p", default="1")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--s")
    p.add_argument("--a")

    p = cmd("spectrum")
    p.add_argument("--bset", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--offset", type=int, default=0)

    p = cmd("theta")
    p.add_argument("--bset", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--offset", type=int, default=0)

    for name in ("include", "witness"):
        p = cmd(name)
        p.add_argument("--bset", required=True)
        p.add_argument("--other", required=True)

    p = cmd("construct-admissible")
    p.add_argument("--small", default="")
    p.add_argument("--bprime", type=int, required=True)

    p = cmd("density")
    p.add_argument("--bset", required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--horizon", type=int, required=True)

    p = cmd("sturmian")
    p.add_argument("--alpha", default="golden", help='"golden" or a rational/decimal in (0,1)')
    p.add_argument("--y", default="0")
    p.add_argument("--interval", default="0:1/2")
    p.add_argument("--window", required=True)

    p = cmd("counterexample")
    p.add_argument("which", choices=["two-mme"])
    p.add_argument("--p", default="1/2")

    p = cmd("transitive")
    p.add_argument("--bset", required=True)
    p.add_argument("--n1", type=int, default=1)
    p.add_argument("--length", type=int, required=True)

    p = cmd("squeeze")
    p.add_argument("--x", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--offset", type=int, default=0)

    p = cmd("embed")
    p.add_argument("--u", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--offset", type=int, default=0)

    return top


def _run(args) -> dict:
    c = args.command
    if c == "eta":
        lo, hi = _parse_window(args.window)
        word = sieve.eta_window(_parse_bset(args.bset), lo, hi)
        return {"word": json.loads(word.to_json())}
    if c == "phi":
        bset = _parse_bset(args.bset)
        omega = OdometerPoint(bset, tuple(int(x) for x in args.omega.split(",")))
        lo, hi = _parse_window(args.window)
        return {"word": json.loads(sieve.phi_window(omega, lo, hi).to_json())}
    if c == "admissible":
        return {"admissible": admissibility.is_admissible(_word(args), _parse_bset(args.bset))}
    if c == "complexity":
        p = admissibility.block_complexity(_parse_bset(args.bset), args.n)
        h = admissibility.entropy_from_complexity(p)
        return {"p_n": [str(x) for x in p], "h_n": h}
    if c == "entropy":
        if args.formula == "bfree":
            report = entropy.htop_bfree(_parse_bset(args.bset))
        elif args.formula == "product":
            report = entropy.h_product_type(_parse_bset(args.bset), Fraction(args.p))
        elif args.formula == "generalized":
            report = entropy.htop_generalized(
                _parse_profile(_parse_bset(args.bset), args.s, args.a)
            )
        else:
            report = entropy.htop_periodic_hereditary(BinaryWord.from_string(args.block))
        return json.loads(report.to_json())
    if c == "mirsky":
        bset = _parse_bset(args.bset)
        entries = {}
        if args.ones:
            entries.update({int(x): 1 for x in args.ones.split(",")})
        if args.zeros:
            entries.update({int(x): 0 for x in args.zeros.split(",")})
        value = measures.mixed_cylinder(bset, CylinderSpec(entries))
        return {"probability": str(value), "float": float(value)}
    if c == "sample":
        bset = _parse_bset(args.bset)
        lo, hi = _parse_window(args.window)
        if args.measure == "mirsky":
            batch = measures.sample_mirsky(bset, lo, hi, args.count, args.seed)
        elif args.measure in ("mme", "product"):
            p = Fraction(1, 2) if args.measure == "mme" else Fraction(args.p)
            batch = measures.sample_product(
                measures.ProductMeasureSpec(bset, p), lo, hi, args.count, args.seed
            )
        else:
            profile = _parse_profile(bset, args.s, args.a)
            batch = measures.sample_generalized(
                profile, Fraction(args.p), lo, hi, args.count, args.seed
            )
        return {
            "metadata": json.loads(batch.metadata_json()),
            "words": [w.to_string() for w in batch.words],
        }
    if c == "spectrum":
        profile = admissibility.spectrum_profile(_word(args), _parse_bset(args.bset))
        return {"profile": json.loads(profile.to_json())}
    if c == "theta":
        out = []
        for cand in admissibility.theta_window(_word(args), _parse_bset(args.bset)):
            if cand is None:
                out.append(None)
            elif len(cand) == 1:
                out.append({"unique": next(iter(cand))})
            else:
                out.append({"ambiguous": sorted(cand)})
        return {"theta": out}
    if c in ("include", "witness"):
        a, b = _parse_bset(args.bset), _parse_bset(args.other)
        verdict = inclusion.includes(a, b)
        witness = inclusion.inclusion_witness(a, b)
        return {
            "includes": verdict,
            "witness": json.loads(witness.to_json()) if witness is not None else None,
        }
    if c == "construct-admissible":
        small = [int(x) for x in args.small.split(",")] if args.small else []
        result = inclusion.construct_admissible(small, args.bprime)
        return {"set": sorted(result)}
    if c == "density":
        est = inclusion.density_estimate(_parse_bset(args.bset), args.c, args.r, args.horizon)
        return {"density": est}
    if c == "sturmian":
        a, b = (Fraction(x) for x in args.interval.split(":"))
        if args.alpha == "golden":
            coding = sturmian.RotationCoding.golden(Fraction(args.y), (a, b))
        else:
            coding = sturmian.RotationCoding.from_real(
                Fraction(args.alpha), Fraction(args.y), (a, b)
            )
        lo, hi = _parse_window(args.window)
        return {"word": json.loads(sturmian.sturmian_window(coding, lo, hi).to_json())}
    if c == "counterexample":
        sys_a, sys_b = sturmian.two_mme_system()
        p = Fraction(args.p)
        target = sys_a.block
        return {
            "blocks": [sys_a.block.to_string(), sys_b.block.to_string()],
            "entropies_bits": [
                str(entropy.htop_periodic_hereditary(s.block).exact) for s in (sys_a, sys_b)
            ],
            "target": target.to_string(),
            "frequencies": [
                str(sturmian.mme_block_frequency(s, target, p)) for s in (sys_a, sys_b)
            ],
        }
    if c == "transitive":
        bset = _parse_bset(args.bset)

        def blocks_of(n):
            return admissibility.admissible_words(bset, n)

        h = float(entropy.htop_bfree(bset).bits)
        word = sturmian.transitive_closure_point(blocks_of, h, args.n1, args.length)
        return {"word": json.loads(word.to_json())}
    if c == "squeeze":
        x = BinaryWord.from_string(args.x, args.offset)
        z = BinaryWord.from_string(args.z, args.offset)
        return {"word": json.loads(measures.squeeze(x, z).to_json())}
    if c == "embed":
        u = BinaryWord.from_string(args.u)
        z = BinaryWord.from_string(args.z, args.offset)
        return {"word": json.loads(measures.embed(u, z).to_json())}
    raise AssertionError(f"unhandled command {c}")


def _to_csv(obj: dict) -> str:
    if "words" in obj:
        lines = ["index,bits"] + [f"{i},{w}" for i, w in enumerate(obj["words"])]
        return "\n".join(lines) + "\n"
    if "p_n" in obj:
        lines = ["n,p_n,h_n"] + [
            f"{i + 1},{p},{h}" for i, (p, h) in enumerate(zip(obj["p_n"], obj["h_n"]))
        ]
        return "\n".join(lines) + "\n"
    lines = ["key,value"] + [f"{k},{json.dumps(v)}" for k, v in obj.items()]
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result = _run(args)
    except BFreeError as exc:
        payload = json.dumps(
            {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}
        )
        print(payload, file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(
            json.dumps({"schema": SCHEMA, "error": "ValueError", "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    result = {"schema": SCHEMA, **result}
    fmt = getattr(args, "format", None) or "json"
    out_path = getattr(args, "out", None)
    text = _to_csv(result) if fmt == "csv" else json.dumps(result)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
