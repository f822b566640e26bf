"""Pure-numpy backend for the bisector sweep.

For a pair of positive points (p, q) the disk center moves along their
bisector, c(tau) = midpoint + tau * d with d = (-(qy-py), qx-px) (so the
signed arclength is tau * |pq|). A point x lies in the closed disk iff
a_x * tau <= b_x with a_x = 2 d . (p - x) and b_x = -(x-p).(x-q); each
point therefore enters (a < 0), exits (a > 0), or never changes state.
The sweep evaluates the running weight at every event parameter and on
every open interval between events (via a representative tau), honoring
closed-disk semantics: starts apply before an event is read, ends after.

The compiled extension implements the same candidate enumeration; both
must select by (max weight, min |tau|, min tau) per pair.
"""

from __future__ import annotations

import math

import numpy as np


def pair_events(P: np.ndarray, W: np.ndarray, i: int, j: int):
    """Geometry and event terms for the pair (i, j).

    Returns (L2, mx, my, rx, ry, a, b) where a, b are per-point arrays of
    the containment condition a * tau <= b, or None when the positions
    coincide.
    """
    px, py = P[i, 0], P[i, 1]
    qx, qy = P[j, 0], P[j, 1]
    dx = qx - px
    dy = qy - py
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return None
    mx = 0.5 * (px + qx)
    my = 0.5 * (py + qy)
    rx = -dy
    ry = dx
    a = 2.0 * (rx * (px - P[:, 0]) + ry * (py - P[:, 1]))
    b = -((P[:, 0] - px) * (P[:, 0] - qx) + (P[:, 1] - py) * (P[:, 1] - qy))
    return L2, mx, my, rx, ry, a, b


def pair_best(P: np.ndarray, W: np.ndarray, i: int, j: int):
    """Best (weight, tau) for the pair (i, j), or None if coincident."""
    geo = pair_events(P, W, i, j)
    if geo is None:
        return None
    L2, mx, my, rx, ry, a, b = geo

    always = a == 0.0
    base = float(W[always & (b >= 0.0)].sum())
    ev_mask = ~always
    if not ev_mask.any():
        return base, 0.0, L2, mx, my, rx, ry

    idx = np.flatnonzero(ev_mask)
    tau = b[idx] / a[idx]
    is_end = a[idx] > 0.0
    w = W[idx]
    base += float(w[is_end].sum())

    finite = np.isfinite(tau)
    tau, is_end, w, idx = tau[finite], is_end[finite], w[finite], idx[finite]
    if len(tau) == 0:
        return base, 0.0, L2, mx, my, rx, ry

    order = np.lexsort((idx, is_end, tau))
    tau_s = tau[order]
    end_s = is_end[order]
    w_s = w[order]

    cstart = np.cumsum(np.where(end_s, 0.0, w_s))
    cend = np.cumsum(np.where(end_s, w_s, 0.0))
    tau_u, first = np.unique(tau_s, return_index=True)
    last = np.r_[first[1:] - 1, len(tau_s) - 1]
    cend_before = np.where(first > 0, cend[np.maximum(first - 1, 0)], 0.0)

    # Weight read at each event parameter (starts applied, ends pending)
    # and on the plateau just after it (ends applied too).
    eval_w = (base + cstart[last]) - cend_before
    plateau_w = (base + cstart[last]) - cend[last]

    cand_tau = [tau_u]
    cand_w = [eval_w]

    # open interval before the first event
    t0 = tau_u[0]
    rep = 0.0 if t0 > 0.0 else t0 - 1.0
    if rep >= t0:
        rep = np.nextafter(t0, -np.inf)
    if rep < t0:
        cand_tau.append(np.array([rep]))
        cand_w.append(np.array([base]))

    # open intervals between consecutive events
    if len(tau_u) > 1:
        lo = tau_u[:-1]
        hi = tau_u[1:]
        mids = lo + 0.5 * (hi - lo)
        contains0 = (lo < 0.0) & (hi > 0.0)
        reps = np.where(contains0, 0.0, mids)
        valid = contains0 | ((mids > lo) & (mids < hi))
        if valid.any():
            cand_tau.append(reps[valid])
            cand_w.append(plateau_w[:-1][valid])

    # open interval after the last event
    tl = tau_u[-1]
    rep = 0.0 if tl < 0.0 else tl + 1.0
    if rep <= tl:
        rep = np.nextafter(tl, np.inf)
    if rep > tl:
        cand_tau.append(np.array([rep]))
        cand_w.append(np.array([plateau_w[-1]]))

    taus = np.concatenate(cand_tau)
    ws = np.concatenate(cand_w)
    pick = np.lexsort((taus, np.abs(taus), -ws))[0]
    return float(ws[pick]), float(taus[pick]), L2, mx, my, rx, ry


def best_over_pairs(P, W, pos, pa, pb, k0):
    """Scan the pair chunk (pa[t], pb[t]) (indices into pos); return the
    chunk optimum as (weight, radius, cx, cy, flat_pair_index) or None.

    Selection order: max weight, then min radius, then lexicographically
    smallest center, then smallest flat pair index.
    """
    best = None
    best_key = None
    for t in range(len(pa)):
        res = pair_best(P, W, int(pos[pa[t]]), int(pos[pb[t]]))
        if res is None:
            continue
        w, tau, L2, mx, my, rx, ry = res
        r = math.sqrt(L2 * (tau * tau + 0.25))
        cx = mx + tau * rx
        cy = my + tau * ry
        key = (-w, r, cx, cy, k0 + t)
        if best_key is None or key < best_key:
            best_key = key
            best = (w, r, cx, cy, k0 + t)
    return best
