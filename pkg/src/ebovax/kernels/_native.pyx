# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sweep kernels.

Statement-for-statement transcription of ebovax.kernels.pure; compiled
with FP contraction disabled so results are bitwise-identical to the
pure-Python twin. Any change here must be mirrored there.
"""


cdef inline void _state_rhs(double s, double e, double i, double r, double d,
                            double ho, double b, double c, double u,
                            double mu, double sigma, double g1, double g2, double g3,
                            double eps, double tau, double d1, double d2, double xi,
                            double bi, double bd, double bh, double br, double n_total,
                            double ae, double ai, double ar, double ad, double ah,
                            double* k) noexcept nogil:
    cdef double mass = bi * i + bh * ho + bd * d + br * r
    cdef double newinf = mass * s / n_total
    cdef double su = s * u
    k[0] = mu * n_total - newinf - mu * s - su
    k[1] = newinf - ae * e
    k[2] = sigma * e - ai * i
    k[3] = g1 * i + g2 * ho - ar * r
    k[4] = eps * i - ad * d
    k[5] = tau * i - ah * ho
    k[6] = d1 * d + d2 * ho - xi * b
    k[7] = g3 * r - mu * c + su
    k[8] = su


def forward_sweep(double[::1] x0, double[::1] u, double h, double[::1] pvec,
                  double[:, ::1] out):
    """See ebovax.kernels.pure.forward_sweep."""
    cdef double mu = pvec[0], sigma = pvec[1], g1 = pvec[2], g2 = pvec[3], g3 = pvec[4]
    cdef double eps = pvec[5], tau = pvec[6], d1 = pvec[7], d2 = pvec[8], xi = pvec[9]
    cdef double bi = pvec[10], bd = pvec[11], bh = pvec[12], br = pvec[13], n_total = pvec[14]
    cdef double ae = sigma + mu
    cdef double ai = g1 + eps + tau + mu
    cdef double ar = g3 + mu
    cdef double ad = d1 + xi
    cdef double ah = g2 + d2 + mu
    cdef double hh = 0.5 * h
    cdef double h6 = h / 6.0

    cdef Py_ssize_t n = u.shape[0] - 1
    cdef Py_ssize_t j
    cdef double s = x0[0], e = x0[1], i = x0[2], r = x0[3], d = x0[4]
    cdef double ho = x0[5], b = x0[6], c = x0[7], w = x0[8]
    cdef double uj, ujp, um
    cdef double k1[9]
    cdef double k2[9]
    cdef double k3[9]
    cdef double k4[9]
    out[0, 0] = s; out[0, 1] = e; out[0, 2] = i; out[0, 3] = r; out[0, 4] = d
    out[0, 5] = ho; out[0, 6] = b; out[0, 7] = c; out[0, 8] = w

    for j in range(n):
        uj = u[j]
        ujp = u[j + 1]
        um = uj + 0.5 * (ujp - uj)

        _state_rhs(s, e, i, r, d, ho, b, c, uj,
                   mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
                   ae, ai, ar, ad, ah, k1)
        _state_rhs(s + hh * k1[0], e + hh * k1[1], i + hh * k1[2], r + hh * k1[3],
                   d + hh * k1[4], ho + hh * k1[5], b + hh * k1[6], c + hh * k1[7], um,
                   mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
                   ae, ai, ar, ad, ah, k2)
        _state_rhs(s + hh * k2[0], e + hh * k2[1], i + hh * k2[2], r + hh * k2[3],
                   d + hh * k2[4], ho + hh * k2[5], b + hh * k2[6], c + hh * k2[7], um,
                   mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
                   ae, ai, ar, ad, ah, k3)
        _state_rhs(s + h * k3[0], e + h * k3[1], i + h * k3[2], r + h * k3[3],
                   d + h * k3[4], ho + h * k3[5], b + h * k3[6], c + h * k3[7], ujp,
                   mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
                   ae, ai, ar, ad, ah, k4)

        s = s + h6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        e = e + h6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        i = i + h6 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        r = r + h6 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        d = d + h6 * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
        ho = ho + h6 * (k1[5] + 2.0 * k2[5] + 2.0 * k3[5] + k4[5])
        b = b + h6 * (k1[6] + 2.0 * k2[6] + 2.0 * k3[6] + k4[6])
        c = c + h6 * (k1[7] + 2.0 * k2[7] + 2.0 * k3[7] + k4[7])
        w = w + h6 * (k1[8] + 2.0 * k2[8] + 2.0 * k3[8] + k4[8])

        out[j + 1, 0] = s; out[j + 1, 1] = e; out[j + 1, 2] = i
        out[j + 1, 3] = r; out[j + 1, 4] = d; out[j + 1, 5] = ho
        out[j + 1, 6] = b; out[j + 1, 7] = c; out[j + 1, 8] = w


cdef inline void _costate_rhs(double s, double i, double r, double d, double ho,
                              double u, double sh,
                              double l1, double l2, double l3, double l4,
                              double l5, double l6, double l7, double l8,
                              double mu, double sigma, double g1, double g2, double g3,
                              double eps, double tau, double d1, double d2, double xi,
                              double bi, double bd, double bh, double br, double n_total,
                              double w1,
                              double ae, double ai, double ar, double ad, double ah,
                              double* k) noexcept nogil:
    cdef double cf = (bi * i + bh * ho + bd * d + br * r) / n_total
    cdef double sn = s / n_total
    k[0] = l1 * (cf + mu + u) - l2 * cf - (l8 + sh) * u
    k[1] = l2 * ae - l3 * sigma
    k[2] = -w1 + (l1 - l2) * (bi * sn) + l3 * ai - l4 * g1 - l5 * eps - l6 * tau
    k[3] = (l1 - l2) * (br * sn) + l4 * ar - l8 * g3
    k[4] = (l1 - l2) * (bd * sn) + l5 * ad - l7 * d1
    k[5] = (l1 - l2) * (bh * sn) - l4 * g2 + l6 * ah - l7 * d2
    k[6] = l7 * xi
    k[7] = l8 * mu


def backward_sweep(double[:, ::1] xs, double[::1] u, double[::1] shift, double h,
                   double[::1] pvec, double[:, ::1] out):
    """See ebovax.kernels.pure.backward_sweep."""
    cdef double mu = pvec[0], sigma = pvec[1], g1 = pvec[2], g2 = pvec[3], g3 = pvec[4]
    cdef double eps = pvec[5], tau = pvec[6], d1 = pvec[7], d2 = pvec[8], xi = pvec[9]
    cdef double bi = pvec[10], bd = pvec[11], bh = pvec[12], br = pvec[13], n_total = pvec[14]
    cdef double w1 = pvec[15]
    cdef double ae = sigma + mu
    cdef double ai = g1 + eps + tau + mu
    cdef double ar = g3 + mu
    cdef double ad = d1 + xi
    cdef double ah = g2 + d2 + mu
    cdef double hh = 0.5 * h
    cdef double h6 = h / 6.0

    cdef Py_ssize_t n = u.shape[0] - 1
    cdef Py_ssize_t j, q
    cdef double l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0
    cdef double l5 = 0.0, l6 = 0.0, l7 = 0.0, l8 = 0.0
    cdef double sj, ij, rj, dj, hj, sm_, im_, rm_, dm_, hm_, sm, im, rm, dm, hm
    cdef double uj, ujm, um, shj, shjm, shm
    cdef double k1[8]
    cdef double k2[8]
    cdef double k3[8]
    cdef double k4[8]
    for q in range(8):
        out[n, q] = 0.0

    for j in range(n, 0, -1):
        sj = xs[j, 0]; ij = xs[j, 2]; rj = xs[j, 3]; dj = xs[j, 4]; hj = xs[j, 5]
        sm_ = xs[j - 1, 0]; im_ = xs[j - 1, 2]; rm_ = xs[j - 1, 3]
        dm_ = xs[j - 1, 4]; hm_ = xs[j - 1, 5]
        sm = sm_ + 0.5 * (sj - sm_)
        im = im_ + 0.5 * (ij - im_)
        rm = rm_ + 0.5 * (rj - rm_)
        dm = dm_ + 0.5 * (dj - dm_)
        hm = hm_ + 0.5 * (hj - hm_)
        uj = u[j]
        ujm = u[j - 1]
        um = ujm + 0.5 * (uj - ujm)
        shj = shift[j]
        shjm = shift[j - 1]
        shm = shjm + 0.5 * (shj - shjm)

        _costate_rhs(sj, ij, rj, dj, hj, uj, shj,
                     l1, l2, l3, l4, l5, l6, l7, l8,
                     mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br,
                     n_total, w1, ae, ai, ar, ad, ah, k1)
        _costate_rhs(sm, im, rm, dm, hm, um, shm,
                     l1 - hh * k1[0], l2 - hh * k1[1], l3 - hh * k1[2], l4 - hh * k1[3],
                     l5 - hh * k1[4], l6 - hh * k1[5], l7 - hh * k1[6], l8 - hh * k1[7],
                     mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br,
                     n_total, w1, ae, ai, ar, ad, ah, k2)
        _costate_rhs(sm, im, rm, dm, hm, um, shm,
                     l1 - hh * k2[0], l2 - hh * k2[1], l3 - hh * k2[2], l4 - hh * k2[3],
                     l5 - hh * k2[4], l6 - hh * k2[5], l7 - hh * k2[6], l8 - hh * k2[7],
                     mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br,
                     n_total, w1, ae, ai, ar, ad, ah, k3)
        _costate_rhs(sm_, im_, rm_, dm_, hm_, ujm, shjm,
                     l1 - h * k3[0], l2 - h * k3[1], l3 - h * k3[2], l4 - h * k3[3],
                     l5 - h * k3[4], l6 - h * k3[5], l7 - h * k3[6], l8 - h * k3[7],
                     mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br,
                     n_total, w1, ae, ai, ar, ad, ah, k4)

        l1 = l1 - h6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        l2 = l2 - h6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        l3 = l3 - h6 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        l4 = l4 - h6 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        l5 = l5 - h6 * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
        l6 = l6 - h6 * (k1[5] + 2.0 * k2[5] + 2.0 * k3[5] + k4[5])
        l7 = l7 - h6 * (k1[6] + 2.0 * k2[6] + 2.0 * k3[6] + k4[6])
        l8 = l8 - h6 * (k1[7] + 2.0 * k2[7] + 2.0 * k3[7] + k4[7])

        out[j - 1, 0] = l1; out[j - 1, 1] = l2; out[j - 1, 2] = l3
        out[j - 1, 3] = l4; out[j - 1, 4] = l5; out[j - 1, 5] = l6
        out[j - 1, 6] = l7; out[j - 1, 7] = l8
