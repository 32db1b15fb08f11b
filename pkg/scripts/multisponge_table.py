"""Tabulate multisponge counts, dimensions and volume ratios for a range of d."""
import argparse
import math
import time

from tensorfractal.analysis import connected_components, multisponge_nnz
from tensorfractal.tensor_core import count_nonzeros
from tensorfractal.tt_format import contract, multisponge_tt, tt_mode_sums

DENSE_LIMIT = 10  # 3**10 cells still contract and BFS in well under a second


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-d", type=int, default=12)
    args = parser.parse_args()

    print(f"{'d':>3} {'m':>9} {'mode_sum':>9} {'dense_nnz':>9} {'D_F':>8} {'m/3^d':>10} {'connected':>9} {'secs':>6}")
    for d in range(2, args.max_d + 1):
        t0 = time.perf_counter()
        m = multisponge_nnz(d)
        tt = multisponge_tt(d)
        dense_nnz = connected = "-"
        if d <= DENSE_LIMIT:
            T = contract(tt)
            dense_nnz = count_nonzeros(T)
            connected = connected_components(T).is_connected
        print(f"{d:>3} {m:>9} {tt_mode_sums(tt):>9} {dense_nnz:>9} "
              f"{math.log(m) / math.log(3):>8.4f} {m / 3**d:>10.6f} {str(connected):>9} "
              f"{time.perf_counter() - t0:>6.2f}")


if __name__ == "__main__":
    main()
