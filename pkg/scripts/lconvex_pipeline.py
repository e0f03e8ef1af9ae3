#!/usr/bin/env python3
"""Stretched-exponential analysis of the L-convex polyomino area counts.

Generates the exact counts, fits the three stretched-exponential parameters
on sliding index triples, cross-checks the growth scale on the square
subsequence, estimates the power-law exponent, extrapolates the amplitude
constant with Bulirsch-Stoer acceleration, and identifies it as a rational
multiple of sqrt(2).  Also reports how the stack polyomino counts approach
their classical asymptotic form.  Writes one JSON report plus figure CSVs.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from seqlab import (
    AnalysisReport,
    HpContext,
    HpSeq,
    bst_extrapolate,
    elim_power,
    emit_csv,
    gen_lconvex_area,
    gen_stack_area,
    identification_entry,
    identify_with_multipliers,
    powerlaw_pipeline,
    ratios,
    scalar_entry,
    square_subsample,
    stretched_amplitude_seq,
    stretched_lambda,
    stretched_triple_fit,
    summarize_stretched,
    text_digest,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--terms", type=int, default=2000,
                        help="number of area counts to analyze")
    parser.add_argument("--digits", type=int, default=100,
                        help="working precision in decimal digits")
    parser.add_argument("--squares", type=int, default=44,
                        help="square-subsampled values fed to the extrapolator")
    parser.add_argument("--report", type=Path, default=Path("lconvex_report.json"))
    args = parser.parse_args()

    counts = gen_lconvex_area(args.terms + 1)
    ctx = HpContext(args.digits)
    hs = HpSeq.from_sequence(counts, ctx).slice_from(1)

    lam = stretched_lambda(hs, Fraction(1, 2))
    e1, e2, e3 = stretched_triple_fit(lam)
    model, spreads = summarize_stretched(e1, e2, e3)
    with ctx.work():
        e1_sq = e1.values[-1] ** 2
        print(f"triple fit at n = {hs.last_index}:")
        print(f"  e1   = {mpmath.nstr(e1.values[-1], 12)}  "
              f"(e1^2 = {mpmath.nstr(e1_sq, 12)}, expect 13/6 = 2.1666...)")
        print(f"  e2   = {mpmath.nstr(e2.values[-1], 10)}  (expect -3/2)")
        print(f"  e3   = {mpmath.nstr(e3.values[-1], 10)}")
        print(f"  tail spreads: " + ", ".join(
            f"{k} {mpmath.nstr(v, 3)}" for k, v in spreads.items()))

    subsampled = square_subsample(hs)
    ratio_seq = ratios(subsampled)
    intercept_1 = elim_power(ratio_seq, 1)
    intercept_2 = elim_power(intercept_1, 2)
    with ctx.work():
        target = mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(13) / 6))
        intercept = ctx.mpf(intercept_2.values[-1])
        print(f"square-subsequence ratio intercept = {mpmath.nstr(intercept, 12)}")
        print(f"  vs exp(pi sqrt(13/6)) = {mpmath.nstr(target, 12)}  "
              f"(diff {mpmath.nstr(abs(intercept - target), 3)})")

    diagnostics = powerlaw_pipeline(subsampled, target)
    with ctx.work():
        print(f"power-law exponent on squares = "
              f"{mpmath.nstr(diagnostics.g_estimate, 8)}  (expect -3, i.e. delta = 3/2)")

    with ctx.work():
        a_true = mpmath.sqrt(mpmath.mpf(13) / 6)
    amplitudes = stretched_amplitude_seq(hs, a_true, Fraction(1, 2), Fraction(3, 2))
    at_squares = square_subsample(amplitudes)
    bst = bst_extrapolate(
        HpSeq(1, at_squares.values[: args.squares], ctx), Fraction(1, 2)
    )
    identified = identify_with_multipliers(bst.value, digits=12)
    with ctx.work():
        exact = 13 * mpmath.sqrt(2) / 768
        print(f"extrapolated amplitude constant = {mpmath.nstr(bst.value, 15)}  "
              f"(spread {mpmath.nstr(bst.spread, 3)}, depth {bst.depth})")
        print(f"  vs 13 sqrt(2)/768 = {mpmath.nstr(exact, 15)}  "
              f"(diff {mpmath.nstr(abs(bst.value - exact), 3)})")
    if identified is not None:
        tag, frac = identified.payload
        print(f"  identified: ({frac}) * {tag}  "
              f"[{identified.certified_digits} certified digits]")

    stacks = gen_stack_area(args.terms)
    with ctx.work():
        def stack_prediction(n: int):
            n_ = mpmath.mpf(n)
            return mpmath.exp(2 * mpmath.pi * mpmath.sqrt(n_ / 3)) / (
                8 * mpmath.power(3, mpmath.mpf(3) / 4)
                * mpmath.power(n_, mpmath.mpf(5) / 4)
            )

        quarter = stacks.last_index // 4
        r_quarter = stacks.term(quarter) / stack_prediction(quarter)
        r_last = stacks.term(stacks.last_index) / stack_prediction(stacks.last_index)
        print(f"stack counts vs exp(2 pi sqrt(n/3))/(8*3^(3/4) n^(5/4)): "
              f"ratio {mpmath.nstr(r_quarter, 8)} at n={quarter}, "
              f"{mpmath.nstr(r_last, 8)} at n={stacks.last_index}")

    with ctx.work():
        csvs = {
            "r_sq": emit_csv(
                ((k, v) for k, v in zip(ratio_seq.indices(), ratio_seq.values)),
                ("k", "ratio"),
            ),
            "intercepts": emit_csv(
                ((mpmath.mpf(1) / k, v)
                 for k, v in zip(intercept_1.indices(), intercept_1.values)),
                ("inv_k", "intercept"),
            ),
            "t_n": emit_csv(
                ((mpmath.mpf(1) / k, v)
                 for k, v in zip(intercept_2.indices(), intercept_2.values)),
                ("inv_k", "t"),
            ),
            "e1": emit_csv(
                ((mpmath.mpf(1) / n, v) for n, v in zip(e1.indices(), e1.values)),
                ("inv_n", "e1"),
            ),
            "e2": emit_csv(
                ((mpmath.mpf(1) / n, v) for n, v in zip(e2.indices(), e2.values)),
                ("inv_n", "e2"),
            ),
            "g_n": emit_csv(
                ((mpmath.mpf(1) / n, v)
                 for n, v in zip(diagnostics.g_seq.indices(), diagnostics.g_seq.values)),
                ("inv_n", "g"),
            ),
            "g2_n": emit_csv(
                ((mpmath.mpf(1) / n, v)
                 for n, v in zip(diagnostics.g2_seq.indices(), diagnostics.g2_seq.values)),
                ("inv_n", "g2"),
            ),
        }

    report = AnalysisReport(
        command="scripts/lconvex_pipeline.py " + " ".join(sys.argv[1:]),
        input_digest=text_digest(",".join(str(t) for t in counts.terms)),
        parameters={
            "terms": args.terms,
            "digits": args.digits,
            "squares": args.squares,
        },
        scalars={
            "e1": scalar_entry(e1.values[-1], 12, spread=spreads["a"]),
            "e1_squared": scalar_entry(e1_sq, 12),
            "e2": scalar_entry(e2.values[-1], 12, spread=spreads["delta"]),
            "e3": scalar_entry(e3.values[-1], 12, spread=spreads["log_c"]),
            "ratio_intercept": scalar_entry(intercept, 12),
            "g_estimate": scalar_entry(
                diagnostics.g_estimate, 10, spread=diagnostics.g_spread
            ),
            "amplitude_constant": scalar_entry(bst.value, 14, spread=bst.spread),
            "stack_ratio_last": scalar_entry(r_last, 10),
        },
        identifications=(
            [identification_entry(
                identified.kind,
                f"({identified.payload[1]}) * {identified.payload[0]}",
                identified.certified_digits,
            )]
            if identified is not None
            else []
        ),
        notes=[
            "model: counts ~ exp(e1 pi sqrt(n)) * n^e2 * exp(e3)",
            "amplitude constant extrapolated on the square subsequence",
        ],
    )
    args.report.parent.mkdir(parents=True, exist_ok=True)
    args.report.write_text(report.to_json(), encoding="utf-8")
    for key, textval in csvs.items():
        (args.report.parent / f"{key}.csv").write_text(textval, encoding="utf-8")
    print(f"report: {args.report} (+ {len(csvs)} CSV files)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
