"""Pure-Python sweep kernels.

These are the fallback twins of the compiled kernels in _native.pyx. The
floating-point expression order here is the reference: _native.pyx must
mirror it statement for statement (and is compiled without FP contraction)
so both backends produce bitwise-identical trajectories.

Parameter vector layout (see ebovax.params.VECTOR_FIELDS):
    0 mu, 1 sigma, 2 gamma1, 3 gamma2, 4 gamma3, 5 epsilon, 6 tau,
    7 delta1, 8 delta2, 9 xi, 10 beta_i, 11 beta_d, 12 beta_h, 13 beta_r,
    14 n_total, 15 w1, 16 w2

State columns: S,E,I,R,D,H,B,C,W. Adjoint columns: costates of S..C.
"""


def forward_sweep(x0, u, h, pvec, out):
    """RK4-integrate the vaccination model over the mesh.

    x0: (9,) initial state; u: (n+1,) per-node control; out: (n+1, 9)
    preallocated output, row 0 set to x0. Control at mid-step is the
    linear midpoint of the bracketing nodes.
    """
    mu = pvec[0]; sigma = pvec[1]; g1 = pvec[2]; g2 = pvec[3]; g3 = pvec[4]
    eps = pvec[5]; tau = pvec[6]; d1 = pvec[7]; d2 = pvec[8]; xi = pvec[9]
    bi = pvec[10]; bd = pvec[11]; bh = pvec[12]; br = pvec[13]; n_total = pvec[14]
    ae = sigma + mu
    ai = g1 + eps + tau + mu
    ar = g3 + mu
    ad = d1 + xi
    ah = g2 + d2 + mu
    hh = 0.5 * h
    h6 = h / 6.0

    n = u.shape[0] - 1
    s = x0[0]; e = x0[1]; i = x0[2]; r = x0[3]; d = x0[4]
    ho = x0[5]; b = x0[6]; c = x0[7]; w = x0[8]
    out[0, 0] = s; out[0, 1] = e; out[0, 2] = i; out[0, 3] = r; out[0, 4] = d
    out[0, 5] = ho; out[0, 6] = b; out[0, 7] = c; out[0, 8] = w

    for j in range(n):
        uj = u[j]
        ujp = u[j + 1]
        um = uj + 0.5 * (ujp - uj)

        (k1s, k1e, k1i, k1r, k1d, k1h, k1b, k1c, k1w) = _state_rhs(
            s, e, i, r, d, ho, b, c, uj,
            mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
            ae, ai, ar, ad, ah)
        (k2s, k2e, k2i, k2r, k2d, k2h, k2b, k2c, k2w) = _state_rhs(
            s + hh * k1s, e + hh * k1e, i + hh * k1i, r + hh * k1r, d + hh * k1d,
            ho + hh * k1h, b + hh * k1b, c + hh * k1c, um,
            mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
            ae, ai, ar, ad, ah)
        (k3s, k3e, k3i, k3r, k3d, k3h, k3b, k3c, k3w) = _state_rhs(
            s + hh * k2s, e + hh * k2e, i + hh * k2i, r + hh * k2r, d + hh * k2d,
            ho + hh * k2h, b + hh * k2b, c + hh * k2c, um,
            mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
            ae, ai, ar, ad, ah)
        (k4s, k4e, k4i, k4r, k4d, k4h, k4b, k4c, k4w) = _state_rhs(
            s + h * k3s, e + h * k3e, i + h * k3i, r + h * k3r, d + h * k3d,
            ho + h * k3h, b + h * k3b, c + h * k3c, ujp,
            mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
            ae, ai, ar, ad, ah)

        s = s + h6 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        e = e + h6 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e)
        i = i + h6 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i)
        r = r + h6 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
        d = d + h6 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        ho = ho + h6 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h)
        b = b + h6 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        c = c + h6 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c)
        w = w + h6 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)

        out[j + 1, 0] = s; out[j + 1, 1] = e; out[j + 1, 2] = i
        out[j + 1, 3] = r; out[j + 1, 4] = d; out[j + 1, 5] = ho
        out[j + 1, 6] = b; out[j + 1, 7] = c; out[j + 1, 8] = w


def _state_rhs(s, e, i, r, d, ho, b, c, u,
               mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total,
               ae, ai, ar, ad, ah):
    mass = bi * i + bh * ho + bd * d + br * r
    newinf = mass * s / n_total
    su = s * u
    ds = mu * n_total - newinf - mu * s - su
    de = newinf - ae * e
    di = sigma * e - ai * i
    dr = g1 * i + g2 * ho - ar * r
    dd = eps * i - ad * d
    dh = tau * i - ah * ho
    db = d1 * d + d2 * ho - xi * b
    dc = g3 * r - mu * c + su
    dw = su
    return ds, de, di, dr, dd, dh, db, dc, dw


def backward_sweep(xs, u, shift, h, pvec, out):
    """RK4-integrate the costate system from zero terminal values down to t0.

    xs: (n+1, 9) state trajectory; u, shift: (n+1,) per-node control and
    costate shift (the vaccine-counter costate or the supply multiplier);
    out: (n+1, 8) preallocated costate output, row n zeroed. Mid-step
    state/control/shift values are linear midpoints.
    """
    mu = pvec[0]; sigma = pvec[1]; g1 = pvec[2]; g2 = pvec[3]; g3 = pvec[4]
    eps = pvec[5]; tau = pvec[6]; d1 = pvec[7]; d2 = pvec[8]; xi = pvec[9]
    bi = pvec[10]; bd = pvec[11]; bh = pvec[12]; br = pvec[13]; n_total = pvec[14]
    w1 = pvec[15]
    ae = sigma + mu
    ai = g1 + eps + tau + mu
    ar = g3 + mu
    ad = d1 + xi
    ah = g2 + d2 + mu
    hh = 0.5 * h
    h6 = h / 6.0

    n = u.shape[0] - 1
    l1 = 0.0; l2 = 0.0; l3 = 0.0; l4 = 0.0
    l5 = 0.0; l6 = 0.0; l7 = 0.0; l8 = 0.0
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

        (k11, k12, k13, k14, k15, k16, k17, k18) = _costate_rhs(
            sj, ij, rj, dj, hj, uj, shj,
            l1, l2, l3, l4, l5, l6, l7, l8,
            mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total, w1,
            ae, ai, ar, ad, ah)
        (k21, k22, k23, k24, k25, k26, k27, k28) = _costate_rhs(
            sm, im, rm, dm, hm, um, shm,
            l1 - hh * k11, l2 - hh * k12, l3 - hh * k13, l4 - hh * k14,
            l5 - hh * k15, l6 - hh * k16, l7 - hh * k17, l8 - hh * k18,
            mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total, w1,
            ae, ai, ar, ad, ah)
        (k31, k32, k33, k34, k35, k36, k37, k38) = _costate_rhs(
            sm, im, rm, dm, hm, um, shm,
            l1 - hh * k21, l2 - hh * k22, l3 - hh * k23, l4 - hh * k24,
            l5 - hh * k25, l6 - hh * k26, l7 - hh * k27, l8 - hh * k28,
            mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total, w1,
            ae, ai, ar, ad, ah)
        (k41, k42, k43, k44, k45, k46, k47, k48) = _costate_rhs(
            sm_, im_, rm_, dm_, hm_, ujm, shjm,
            l1 - h * k31, l2 - h * k32, l3 - h * k33, l4 - h * k34,
            l5 - h * k35, l6 - h * k36, l7 - h * k37, l8 - h * k38,
            mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total, w1,
            ae, ai, ar, ad, ah)

        l1 = l1 - h6 * (k11 + 2.0 * k21 + 2.0 * k31 + k41)
        l2 = l2 - h6 * (k12 + 2.0 * k22 + 2.0 * k32 + k42)
        l3 = l3 - h6 * (k13 + 2.0 * k23 + 2.0 * k33 + k43)
        l4 = l4 - h6 * (k14 + 2.0 * k24 + 2.0 * k34 + k44)
        l5 = l5 - h6 * (k15 + 2.0 * k25 + 2.0 * k35 + k45)
        l6 = l6 - h6 * (k16 + 2.0 * k26 + 2.0 * k36 + k46)
        l7 = l7 - h6 * (k17 + 2.0 * k27 + 2.0 * k37 + k47)
        l8 = l8 - h6 * (k18 + 2.0 * k28 + 2.0 * k38 + k48)

        out[j - 1, 0] = l1; out[j - 1, 1] = l2; out[j - 1, 2] = l3
        out[j - 1, 3] = l4; out[j - 1, 4] = l5; out[j - 1, 5] = l6
        out[j - 1, 6] = l7; out[j - 1, 7] = l8


def _costate_rhs(s, i, r, d, ho, u, sh,
                 l1, l2, l3, l4, l5, l6, l7, l8,
                 mu, sigma, g1, g2, g3, eps, tau, d1, d2, xi, bi, bd, bh, br, n_total, w1,
                 ae, ai, ar, ad, ah):
    cf = (bi * i + bh * ho + bd * d + br * r) / n_total
    sn = s / n_total
    dl1 = l1 * (cf + mu + u) - l2 * cf - (l8 + sh) * u
    dl2 = l2 * ae - l3 * sigma
    dl3 = -w1 + (l1 - l2) * (bi * sn) + l3 * ai - l4 * g1 - l5 * eps - l6 * tau
    dl4 = (l1 - l2) * (br * sn) + l4 * ar - l8 * g3
    dl5 = (l1 - l2) * (bd * sn) + l5 * ad - l7 * d1
    dl6 = (l1 - l2) * (bh * sn) - l4 * g2 + l6 * ah - l7 * d2
    dl7 = l7 * xi
    dl8 = l8 * mu
    return dl1, dl2, dl3, dl4, dl5, dl6, dl7, dl8
