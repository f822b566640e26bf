# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the bisector sweep.

Mirrors _sweep_py.best_over_pairs: same candidate enumeration (event
parameters plus representatives of the open intervals between them) and
the same selection order (max weight, min |tau|, min tau per pair; then
max weight, min radius, lexicographic center, pair index across pairs).
Runs without the GIL so chunks can execute on real threads.
"""

from libc.math cimport INFINITY, fabs, nextafter, sqrt, isfinite
from libc.stdlib cimport free, malloc, qsort


cdef struct Event:
    double tau
    double w
    int kind      # 0 = start, 1 = end
    int idx


cdef int _cmp_event(const void* pa, const void* pb) noexcept nogil:
    cdef const Event* a = <const Event*> pa
    cdef const Event* b = <const Event*> pb
    if a.tau < b.tau:
        return -1
    if a.tau > b.tau:
        return 1
    if a.kind != b.kind:
        return a.kind - b.kind
    if a.idx < b.idx:
        return -1
    if a.idx > b.idx:
        return 1
    return 0


cdef struct PairBest:
    double w
    double tau
    int found


cdef inline void _consider(PairBest* best, double w, double tau) noexcept nogil:
    cdef double at = fabs(tau)
    cdef double bt
    if not best.found:
        best.w = w
        best.tau = tau
        best.found = 1
        return
    if w > best.w:
        best.w = w
        best.tau = tau
        return
    if w == best.w:
        bt = fabs(best.tau)
        if at < bt or (at == bt and tau < best.tau):
            best.tau = tau


cdef int _pair_best(const double[:, ::1] P, const double[::1] W, Py_ssize_t i,
                    Py_ssize_t j, Event* ev, double* out_w, double* out_tau,
                    double* out_L2, double* out_m, double* out_r) noexcept nogil:
    """Best (weight, tau) over the bisector of pair (i, j); 0 if coincident."""
    cdef double px = P[i, 0], py = P[i, 1]
    cdef double qx = P[j, 0], qy = P[j, 1]
    cdef double dx = qx - px
    cdef double dy = qy - py
    cdef double L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return 0
    cdef double mx = 0.5 * (px + qx)
    cdef double my = 0.5 * (py + qy)
    cdef double rx = -dy
    cdef double ry = dx

    cdef Py_ssize_t n = P.shape[0]
    cdef Py_ssize_t k, nev = 0
    cdef double a, b, base = 0.0, tau
    cdef double run, gs, ge, tg, tn, rep
    cdef Py_ssize_t e, g
    cdef PairBest best
    for k in range(n):
        a = 2.0 * (rx * (px - P[k, 0]) + ry * (py - P[k, 1]))
        b = -((P[k, 0] - px) * (P[k, 0] - qx) + (P[k, 1] - py) * (P[k, 1] - qy))
        if a == 0.0:
            if b >= 0.0:
                base += W[k]
            continue
        tau = b / a
        if not isfinite(tau):
            continue
        ev[nev].tau = tau
        ev[nev].w = W[k]
        ev[nev].idx = <int> k
        if a > 0.0:
            ev[nev].kind = 1
            base += W[k]
        else:
            ev[nev].kind = 0
        nev += 1

    best.found = 0
    if nev == 0:
        _consider(&best, base, 0.0)
    else:
        qsort(ev, nev, sizeof(Event), _cmp_event)

        # open interval before the first event
        tau = 0.0 if ev[0].tau > 0.0 else ev[0].tau - 1.0
        if tau >= ev[0].tau:
            tau = nextafter(ev[0].tau, -INFINITY)
        if tau < ev[0].tau:
            _consider(&best, base, tau)

        run = base
        e = 0
        while e < nev:
            tg = ev[e].tau
            gs = 0.0
            ge = 0.0
            g = e
            while g < nev and ev[g].tau == tg:
                if ev[g].kind == 0:
                    gs += ev[g].w
                else:
                    ge += ev[g].w
                g += 1
            run = run + gs
            _consider(&best, run, tg)   # starts applied, ends still inside
            run = run - ge
            if g < nev:
                tn = ev[g].tau
                if tg < 0.0 and tn > 0.0:
                    _consider(&best, run, 0.0)
                else:
                    rep = tg + 0.5 * (tn - tg)
                    if rep > tg and rep < tn:
                        _consider(&best, run, rep)
            else:
                rep = 0.0 if tg < 0.0 else tg + 1.0
                if rep <= tg:
                    rep = nextafter(tg, INFINITY)
                if rep > tg:
                    _consider(&best, run, rep)
            e = g

    out_w[0] = best.w
    out_tau[0] = best.tau
    out_L2[0] = L2
    out_m[0] = mx
    out_m[1] = my
    out_r[0] = rx
    out_r[1] = ry
    return 1


def best_over_pairs(const double[:, ::1] P, const double[::1] W,
                    const long long[::1] pos, const long long[::1] pa,
                    const long long[::1] pb, long long k0):
    """Chunk scan; returns (weight, radius, cx, cy, flat_pair_index) or None."""
    cdef Py_ssize_t n = P.shape[0]
    cdef Py_ssize_t npair = pa.shape[0]
    cdef Event* ev = <Event*> malloc(n * sizeof(Event))
    if ev == NULL:
        raise MemoryError()

    cdef double w, tau, L2
    cdef double m[2]
    cdef double rdir[2]
    cdef double r, cx, cy
    cdef double bw = 0.0, br = 0.0, bcx = 0.0, bcy = 0.0
    cdef long long bk = 0
    cdef int have = 0
    cdef Py_ssize_t t
    try:
        with nogil:
            for t in range(npair):
                if not _pair_best(P, W, pos[pa[t]], pos[pb[t]], ev,
                                  &w, &tau, &L2, m, rdir):
                    continue
                r = sqrt(L2 * (tau * tau + 0.25))
                cx = m[0] + tau * rdir[0]
                cy = m[1] + tau * rdir[1]
                if (not have
                        or w > bw
                        or (w == bw and (r < br
                            or (r == br and (cx < bcx
                                or (cx == bcx and (cy < bcy
                                    or (cy == bcy and k0 + t < bk)))))))):
                    bw = w
                    br = r
                    bcx = cx
                    bcy = cy
                    bk = k0 + t
                    have = 1
    finally:
        free(ev)
    if not have:
        return None
    return bw, br, bcx, bcy, bk
