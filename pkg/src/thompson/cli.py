"""Command-line front end.

Every element argument uses the word grammar, e.g. ``"x0 x1^-1 x2^3"``.
Exit status: 0 on success, 1 on bad input or an exceeded resource cap, 2 when
a verification verb finds a failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from thompson import embeddings, metrics, plmap
from thompson.metrics import DEFAULT_CAP, ResourceLimitError
from thompson.normal_form import NormalForm, d_statistic, invert, multiply, normalize, shift
from thompson.words import WordSyntaxError, format_word, parse_word

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _nf(text: str) -> NormalForm:
    return normalize(parse_word(text))


def _nf_payload(a: NormalForm) -> dict:
    return {"word": str(a), **a.to_json()}


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_nf(args) -> int:
    a = _nf(args.word)
    _emit(args, _nf_payload(a), str(a))
    return EXIT_OK


def cmd_mul(args) -> int:
    a = multiply(_nf(args.left), _nf(args.right))
    _emit(args, _nf_payload(a), str(a))
    return EXIT_OK


def cmd_inv(args) -> int:
    a = invert(_nf(args.word))
    _emit(args, _nf_payload(a), str(a))
    return EXIT_OK


def cmd_phi(args) -> int:
    a = shift(_nf(args.word), args.k)
    _emit(args, _nf_payload(a), str(a))
    return EXIT_OK


def cmd_plmap(args) -> int:
    f = plmap.from_word(parse_word(args.word))
    if args.csv:
        print("a,b")
        for a, b in f.nodes:
            print(f"{a},{b}")
        return EXIT_OK
    lines = [f"tail {f.tail}"] + [f"({a}, {b})" for a, b in f.nodes]
    _emit(args, f.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_bounds(args) -> int:
    a = _nf(args.word)
    b = metrics.norm_bounds(a)
    rewrite = metrics.rewrite_to_finite_gens(a)
    payload = {"normal_form": str(a), "D": d_statistic(a), **b.to_json(), "rewrite": format_word(rewrite), "rewrite_length": len(rewrite)}
    text = "\n".join(
        [
            f"normal form   {a}",
            f"D             {d_statistic(a)}",
            f"D/6 - 2       {b.d_lower}",
            f"3D            {b.d_upper}",
            f"breakpoint bound {b.breakpoint_lb}",
            f"x0,x1 word    {format_word(rewrite)} (length {len(rewrite)})",
        ]
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_norm(args) -> int:
    f = plmap.from_word(parse_word(args.word))
    n = metrics.exact_norm(f, args.max_radius, args.cap_states)
    payload = {"norm": n, "max_radius": args.max_radius, "beyond_radius": n is None}
    _emit(args, payload, str(n) if n is not None else f"> {args.max_radius}")
    return EXIT_OK


def cmd_ball(args) -> int:
    stats = metrics.ball_sizes(args.radius, args.cap_states)
    text = "\n".join(["r\tsphere"] + [f"{r}\t{s}" for r, s in enumerate(stats.sphere_sizes)] + [f"total\t{stats.total}"])
    _emit(args, stats.to_json(), text)
    return EXIT_OK


def cmd_check(args) -> int:
    report = metrics.check_presentation(args.max_index, samples=args.samples, seed=args.seed)
    payload = {**report.to_json(), "seed": args.seed}
    text = "all relators trivial" if report.ok else report.summary()
    if not args.json:
        text += f"\n({report.checked} checks, seed {args.seed})"
    _emit(args, payload, text)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_embed(args) -> int:
    try:
        ks = [int(v) for v in args.k.split(",")]
    except ValueError:
        raise ValueError(f"--k expects comma-separated integers, got {args.k!r}") from None
    a = _nf(args.word)
    payload = {"x": str(a), "k": ks}
    if len(ks) == 1:
        report = embeddings.qi_check([embeddings.FxZnElement(a, tuple(ks))], args.max_radius, cap_states=args.cap_states)
        s = report.samples[0]
        payload.update(_nf_payload(s.image), checks=s.to_json())
        lines = [
            str(s.image),
            f"closed form matches: {s.displayed_ok}",
            f"D(x) = {s.d_x}, D(image) = {s.d_image}"
            + ("" if s.d_relation_ok is None else f", D + 4k + 4 holds: {s.d_relation_ok}"),
            f"norms ({'exact' if s.exact else 'bounded'}): |x| = {s.x_norm}, |image| = {s.image_norm}; K=18, C=48 ok: {s.inequality_ok}",
        ]
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK if s.ok else EXIT_FAILED
    image = embeddings.embed_n(a, ks)
    payload.update(_nf_payload(image))
    _emit(args, payload, str(image))
    return EXIT_OK


def cmd_distort(args) -> int:
    spec = embeddings.SubgroupSpec.parse(args.subgroup)
    report = embeddings.h_distortion(spec, args.h_radius, args.f_radius, cap_states=args.cap_states)
    _emit(args, report.to_json(), report.table())
    return EXIT_OK if report.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--cap-states", type=int, default=DEFAULT_CAP, help="BFS state cap (default %(default)s)")

    parser = _Parser(prog="thompson", description="Exact computation in Thompson's group F.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("nf", parents=[common], help="normal form of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("mul", parents=[common], help="product of two words")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("inv", parents=[common], help="inverse")
    p.add_argument("word")
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("phi", parents=[common], help="shift x_i -> x_{i+k}")
    p.add_argument("word")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("plmap", parents=[common], help="breakpoints of the PL homeomorphism")
    p.add_argument("word")
    p.add_argument("--csv", action="store_true", help="emit breakpoints as CSV")
    p.set_defaults(func=cmd_plmap)

    p = sub.add_parser("bounds", parents=[common], help="norm estimates from the normal form")
    p.add_argument("word")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("norm", parents=[common], help="exact word norm in x0, x1")
    p.add_argument("word")
    p.add_argument("--max-radius", type=int, default=10)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("ball", parents=[common], help="sphere sizes of the Cayley graph")
    p.add_argument("radius", type=int)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("check", parents=[common], help="verify the presentations")
    p.add_argument("--max-index", type=int, default=8)
    p.add_argument("--samples", type=int, default=200, help="random words for the shift law")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("embed", parents=[common], help="image of (x, t^k) in F")
    p.add_argument("word")
    p.add_argument("--k", required=True, help="k or k1,k2,...,kn")
    p.add_argument("--max-radius", type=int, default=10, help="BFS radius for the norm checks")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("distort", parents=[common], help="sampled distortion function h(r)")
    p.add_argument("--subgroup", default="fxz", help='"fxz", "fxz^n:<n>" or comma-separated words')
    p.add_argument("--h-radius", type=int, default=4)
    p.add_argument("--f-radius", type=int, default=10)
    p.set_defaults(func=cmd_distort)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WordSyntaxError, ValueError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
