"""Pure-Python bitset kernels.

A set over Z_n is a membership mask in one arbitrary-precision int: bit i
set means i is a member.  All shifts are cyclic modulo the mask length n.
The compiled backend (``_fastbits``) implements the same three entry
points over word arrays.
"""

NAME = "pure"


def sumset_bits(shifts, bits: int, n: int) -> int:
    """OR of the cyclic left-shifts of ``bits`` by each amount in ``shifts``.

    This is the membership mask of {s + x mod n : s in shifts, bit x set}.
    """
    mask = (1 << n) - 1
    acc = 0
    for s in shifts:
        acc |= ((bits << s) & mask) | (bits >> (n - s))
    return acc


def membership_count_scaled(bits: int, elems, r: int, n: int) -> int:
    """Count elements e of ``elems`` with bit (r*e mod n) set in ``bits``."""
    view = bits.to_bytes((n + 7) >> 3, "little")
    count = 0
    for e in elems:
        x = (r * e) % n
        if (view[x >> 3] >> (x & 7)) & 1:
            count += 1
    return count


def best_subset_union(shifted, n: int):
    """Scan every nonempty subset of the masks in ``shifted``.

    Minimizes popcount(union)/popcount(subset); ties prefer larger
    subsets, then the subset whose lowest differing index is present.
    Returns (best_index_mask, union_popcount_of_best).
    """
    m = len(shifted)
    if m == 0:
        raise ValueError("need at least one mask")
    best_card = 0
    best_k = 0
    best_mask = -1

    def visit(start, acc, mask, k):
        nonlocal best_card, best_k, best_mask
        for j in range(start, m):
            u = acc | shifted[j]
            pm = mask | (1 << j)
            card = u.bit_count()
            kk = k + 1
            if best_mask < 0:
                better = True
            else:
                lhs = card * best_k
                rhs = best_card * kk
                if lhs != rhs:
                    better = lhs < rhs
                elif kk != best_k:
                    better = kk > best_k
                else:
                    diff = pm ^ best_mask
                    better = bool(pm & (diff & -diff))
            if better:
                best_card, best_k, best_mask = card, kk, pm
            visit(j + 1, u, pm, kk)

    visit(0, 0, 0, 0)
    return best_mask, best_card
