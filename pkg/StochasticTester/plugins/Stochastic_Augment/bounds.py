import math

# log n is the natural logarithm throughout


def t_from_probability(p: float, non_edge_count: int) -> float:
    """t = p·|Ē|, with p clipped to [0, 1]"""
    return min(max(p, 0.0), 1.0) * non_edge_count


def lemma31_probability(n: int, s: int, c: float = 2.0) -> float:
    """Per-edge probability that connects every component of size >= s w.h.p., 2(c+2)ln n/(sn)"""
    return 2 * (c + 2) * math.log(n) / (s * n)


def tightness_probability(n: int, s: int, c: float = 2.0) -> float:
    """Probability under which a size-s component stays isolated with probability >= n^(-c/2), c ln n/(4sn)"""
    return c * math.log(n) / (4 * s * n)


def lemma44_probability(n: int, s: int, c: float = 2.0) -> float:
    """Raises (k-1)-connectivity to k-connectivity w.h.p. when s = s_k(G), 4(c+2)ln n/(sn)"""
    return 4 * (c + 2) * math.log(n) / (s * n)


def theorem41_probability(n: int, s: int, c: float = 2.0) -> float:
    """Per-iteration probability of the iterative processes, 4(c+3)ln n/(sn)"""
    return 4 * (c + 3) * math.log(n) / (s * n)


def failure_target(n: int, c: float = 2.0) -> float:
    """n^(-c)"""
    return float(n) ** (-c)
