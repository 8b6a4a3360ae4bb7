"""Bitmask helpers for short-distance reachability on small graphs."""


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def union_over(mask: int, table) -> int:
    acc = 0
    while mask:
        low = mask & -mask
        acc |= table[low.bit_length() - 1]
        mask ^= low
    return acc


def layer_counts(out, n: int):
    """Per vertex ``(#at 1, #at 2, #at 3, #farther)`` from out-neighbour masks."""
    two = [union_over(m, out) for m in out]
    res = []
    for v in range(n):
        seen = 1 << v
        r1 = out[v] & ~seen
        seen |= r1
        r2 = union_over(out[v], out) & ~seen
        seen |= r2
        r3 = union_over(out[v], two) & ~seen
        c1, c2, c3 = r1.bit_count(), r2.bit_count(), r3.bit_count()
        res.append((c1, c2, c3, n - 1 - c1 - c2 - c3))
    return res
