"""Independent naive reference implementations used as test oracles.

Everything here is deliberately written the slow, obvious way — plain
Python loops, plain `+` accumulation, no numpy, no imports from tickvol —
so agreement with the library is evidence, not tautology. Trades are
plain (timestamp, cost, volume) tuples.
"""

import math


# ---------------------------------------------------------------------------
# windows and price moments


def window_members(trades, center, width):
    lo = center - width / 2
    hi = center + width / 2
    return [tr for tr in trades if lo <= tr[0] <= hi]


def price_moment(trades, n):
    cs = 0.0
    vs = 0.0
    for _, c, v in trades:
        cs += c ** n
        vs += v ** n
    return cs / vs


def degree_sums(trades, n):
    cs = 0.0
    vs = 0.0
    for _, c, v in trades:
        cs += c ** n
        vs += v ** n
    return cs, vs


def vwap(trades):
    return price_moment(trades, 1)


def simple_average_price(trades):
    total = 0.0
    for _, c, v in trades:
        total += c / v
    return total / len(trades)


# ---------------------------------------------------------------------------
# price volatility, both forms


def price_vol_direct(trades):
    return price_moment(trades, 2) - price_moment(trades, 1) ** 2


def dispersion_stats(trades):
    n = len(trades)
    c1 = sum(c for _, c, _ in trades) / n
    c2 = sum(c * c for _, c, _ in trades) / n
    v1 = sum(v for _, _, v in trades) / n
    v2 = sum(v * v for _, _, v in trades) / n
    return {
        "c1": c1, "c2": c2, "v1": v1, "v2": v2,
        "sigma_c2": c2 - c1 * c1, "sigma_v2": v2 - v1 * v1,
        "phi_c2": c2 + c1 * c1, "phi_v2": v2 + v1 * v1,
    }


def price_vol_closed(trades):
    s = dispersion_stats(trades)
    num = s["phi_v2"] * s["sigma_c2"] - s["phi_c2"] * s["sigma_v2"]
    den = s["phi_v2"] ** 2 - s["sigma_v2"] ** 2
    return 2.0 * num / den


# ---------------------------------------------------------------------------
# returns


def returns_records(trades, m):
    """[(t_i, qp, r, qc, qv)] for i >= m, pairing with trade i-m."""
    out = []
    for i in range(m, len(trades)):
        t_i, c_i, v_i = trades[i]
        _, c_j, v_j = trades[i - m]
        qp = (c_i / v_i) / (c_j / v_j)
        out.append((t_i, qp, qp - 1.0, c_i / c_j, v_i / v_j))
    return out


def returns_moment(records, n):
    qc_sum = 0.0
    qv_sum = 0.0
    for _, _, _, qc, qv in records:
        qc_sum += qc ** n
        qv_sum += qv ** n
    return qc_sum / qv_sum


def returns_vol_direct(records):
    return returns_moment(records, 2) - returns_moment(records, 1) ** 2


def returns_vol_rform(records):
    qv1 = sum(qv for *_, qv in records)
    qv2 = sum(qv * qv for *_, qv in records)
    r11 = sum(r * qv for _, _, r, _, qv in records) / qv1
    r21 = sum(r * qv * qv for _, _, r, _, qv in records) / qv2
    r22 = sum(r * r * qv * qv for _, _, r, _, qv in records) / qv2
    return r22 - r11 * r11 + 2.0 * (r21 - r11)


def returns_vol_closed(records):
    n = len(records)
    qc1 = sum(qc for _, _, _, qc, _ in records) / n
    qc2 = sum(qc * qc for _, _, _, qc, _ in records) / n
    qv1 = sum(qv for *_, qv in records) / n
    qv2 = sum(qv * qv for *_, qv in records) / n
    omega_c2 = qc2 - qc1 * qc1
    omega_v2 = qv2 - qv1 * qv1
    phi_c2 = qc2 + qc1 * qc1
    phi_v2 = qv2 + qv1 * qv1
    return 2.0 * (phi_v2 * omega_c2 - phi_c2 * omega_v2) / (phi_v2 ** 2 - omega_v2 ** 2)


# ---------------------------------------------------------------------------
# multi-time moments and the truncated characteristic functional
#
# pairs are (timestamp, a, b) tuples. The combination set: group the time
# tuple by equal values; a combination picks one pair per group; its
# contribution is the product over groups of a^multiplicity. Groups must
# have pairwise disjoint windows.


def multi_time_sums(pairs, times, width):
    """(a_sum, b_sum, combo_count) by explicit combination enumeration."""
    groups = {}
    for t in times:
        groups[t] = groups.get(t, 0) + 1
    group_list = sorted(groups.items())
    member_sets = []
    for t, mult in group_list:
        members = [(a, b) for ts, a, b in pairs if t - width / 2 <= ts <= t + width / 2]
        if not members:
            raise ValueError(f"empty window at {t}")
        member_sets.append((members, mult))

    def rec(level):
        if level == len(member_sets):
            return [(1.0, 1.0)]
        tails = rec(level + 1)
        members, mult = member_sets[level]
        out = []
        for a, b in members:
            for ta, tb in tails:
                out.append((a ** mult * ta, b ** mult * tb))
        return out

    combos = rec(0)
    a_sum = 0.0
    b_sum = 0.0
    for a, b in combos:
        a_sum += a
        b_sum += b
    return a_sum, b_sum, len(combos)


def multi_time_moment(pairs, times, width):
    a_sum, b_sum, _ = multi_time_sums(pairs, times, width)
    return a_sum / b_sum


def charfun_bruteforce(pairs, grid, x, step, n_max, width):
    """Nested-loop evaluation of the truncated functional.

    Enumerates every ordered index tuple (g_1..g_n) for each order n and
    sums i^n/n! * p(n; t_tuple) * x-product * h^n with complex arithmetic.
    """
    total = complex(1.0, 0.0)
    g = len(grid)
    for n in range(1, n_max + 1):
        order_sum = 0.0
        idx = [0] * n
        while True:
            times = tuple(grid[k] for k in idx)
            weight = 1.0
            for k in idx:
                weight *= x[k]
            if weight != 0.0:
                order_sum += multi_time_moment(pairs, times, width) * weight
            # odometer increment over the n-fold index grid
            pos = n - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < g:
                    break
                idx[pos] = 0
                pos -= 1
            if pos < 0:
                break
        total += (1j ** n) / math.factorial(n) * order_sum * step ** n
    return total


# ---------------------------------------------------------------------------
# helpers for building random fixtures


def lognormal_trades(rng, n, price_sigma=1.0, vol_sigma=1.0, t0=0.0, dt=1.0):
    """n trades with log-normal prices/volumes; returns tuple list."""
    trades = []
    for i in range(n):
        p = math.exp(rng.gauss(0.0, price_sigma))
        v = math.exp(rng.gauss(0.0, vol_sigma))
        trades.append((t0 + i * dt, p * v, v))
    return trades
