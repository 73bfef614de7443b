# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

delta_histogram_p1 walks every pair (u monic, deg a <= d) over F_q, forms
h = a^2 - 4u^2 and accumulates the histogram of the singularity weight
delta(h) = sum floor(m/2) deg A_m + floor((2d - deg h)/2), computing the
squarefree structure by gcd chains (Yun's walk with p-th-power descent).
Field arithmetic comes in as dense add/mul tables plus a p-th-root table.
"""

import numpy as np

DEF MAXBUF = 40


cdef int p_degree(int *a, int top) nogil:
    cdef int i
    for i in range(top, -1, -1):
        if a[i] != 0:
            return i
    return -1


cdef void p_zero(int *a, int n) nogil:
    cdef int i
    for i in range(n):
        a[i] = 0


cdef void p_copy(int *dst, int *src, int n) nogil:
    cdef int i
    for i in range(n):
        dst[i] = src[i]


cdef int p_derive(int *dst, int *a, int deg, int p, int[:, :] mul) nogil:
    # dst = a', returns deg(a')
    cdef int i
    for i in range(deg):
        dst[i] = mul[(i + 1) % p, a[i + 1]]
    return p_degree(dst, deg - 1) if deg > 0 else -1


cdef int p_mod_inplace(int *a, int adeg, int *b, int bdeg,
                       int[:, :] add, int[:, :] mul, int[:] neg, int[:] inv) nogil:
    # a <- a mod b (b != 0, bdeg >= 0); returns new degree of a
    cdef int i, j, fac
    cdef int il = inv[b[bdeg]]
    for i in range(adeg, bdeg - 1, -1):
        if a[i] != 0:
            fac = mul[a[i], il]
            for j in range(bdeg + 1):
                a[i - bdeg + j] = add[a[i - bdeg + j], neg[mul[fac, b[j]]]]
    return p_degree(a, bdeg - 1) if bdeg > 0 else -1


cdef int p_divide_exact(int *a, int adeg, int *b, int bdeg, int *quo,
                        int[:, :] add, int[:, :] mul, int[:] neg, int[:] inv) nogil:
    # quo <- a / b for exact division; returns deg(quo); destroys a
    cdef int i, j, fac
    cdef int il = inv[b[bdeg]]
    p_zero(quo, MAXBUF)
    for i in range(adeg, bdeg - 1, -1):
        fac = mul[a[i], il]
        quo[i - bdeg] = fac
        if fac != 0:
            for j in range(bdeg + 1):
                a[i - bdeg + j] = add[a[i - bdeg + j], neg[mul[fac, b[j]]]]
    return adeg - bdeg


cdef int p_gcd(int *a, int adeg, int *b, int bdeg, int *out,
               int[:, :] add, int[:, :] mul, int[:] neg, int[:] inv) nogil:
    # out <- monic gcd(a, b); inputs are scratch copies; returns its degree
    cdef int buf1[MAXBUF]
    cdef int buf2[MAXBUF]
    cdef int *x = buf1
    cdef int *y = buf2
    cdef int xd = adeg, yd = bdeg, i, il
    cdef int *tmp
    p_zero(x, MAXBUF); p_zero(y, MAXBUF)
    p_copy(x, a, adeg + 1 if adeg >= 0 else 0)
    p_copy(y, b, bdeg + 1 if bdeg >= 0 else 0)
    while yd >= 0:
        xd = p_mod_inplace(x, xd, y, yd, add, mul, neg, inv)
        tmp = x; x = y; y = tmp
        i = xd; xd = yd; yd = i
    if xd < 0:
        out[0] = 0
        return -1
    il = inv[x[xd]]
    for i in range(xd + 1):
        out[i] = mul[x[i], il]
    return xd


cdef long delta_fin(int *h, int hdeg, int p,
                    int[:, :] add, int[:, :] mul, int[:] neg, int[:] inv,
                    int[:] prt) nogil:
    # sum over the squarefree decomposition of floor(m/2) * deg A_m
    cdef int g[MAXBUF]
    cdef int dg[MAXBUF]
    cdef int a_[MAXBUF]
    cdef int b_[MAXBUF]
    cdef int c_[MAXBUF]
    cdef int scratch[MAXBUF]
    cdef int quo[MAXBUF]
    cdef int gdeg, ddeg, ad, bd, cd, i, mult_scale, piece
    cdef long total = 0
    p_zero(g, MAXBUF)
    p_copy(g, h, hdeg + 1)
    gdeg = hdeg
    mult_scale = 1
    while gdeg > 0:
        ddeg = p_derive(dg, g, gdeg, p, mul)
        if ddeg < 0:
            # g is a p-th power: take the p-th root coefficientwise
            for i in range(gdeg // p + 1):
                scratch[i] = prt[g[i * p]]
            for i in range(gdeg // p + 1, MAXBUF):
                scratch[i] = 0
            p_copy(g, scratch, MAXBUF)
            gdeg = gdeg // p
            mult_scale = mult_scale * p
            continue
        ad = p_gcd(g, gdeg, dg, ddeg, a_, add, mul, neg, inv)
        if ad <= 0:
            # g squarefree: each factor keeps the current descent multiplicity
            total += (mult_scale // 2) * gdeg
            break
        # b = g / a
        p_copy(scratch, g, gdeg + 1)
        bd = p_divide_exact(scratch, gdeg, a_, ad, b_, add, mul, neg, inv)
        i = 1
        while bd > 0:
            cd = p_gcd(a_, ad, b_, bd, c_, add, mul, neg, inv)
            piece = bd - cd
            if piece > 0:
                total += ((i * mult_scale) // 2) * piece
            # b <- c ; a <- a / c
            p_copy(scratch, a_, ad + 1)
            ad = p_divide_exact(scratch, ad, c_, cd, quo, add, mul, neg, inv)
            p_copy(a_, quo, MAXBUF)
            p_copy(b_, c_, MAXBUF)
            bd = cd
            i += 1
        p_copy(g, a_, MAXBUF)
        gdeg = ad
    return total


def delta_histogram_p1(int q, int d, int[:, :] add, int[:, :] mul,
                       int[:] prt, int p):
    """Histogram of delta over all (u monic deg <= d, a deg <= d) pairs."""
    if 2 * d + 4 > MAXBUF:
        raise ValueError("degree too large for the compiled kernel")
    cdef int[:] neg = np.zeros(q, dtype=np.int32)
    cdef int[:] inv = np.zeros(q, dtype=np.int32)
    cdef int i, j
    for i in range(q):
        for j in range(q):
            if add[i, j] == 0:
                neg[i] = j
            if i and mul[i, j] == 1:
                inv[i] = j
    hist_np = np.zeros(2 * d + 2, dtype=np.int64)
    cdef long[:] hist = hist_np
    cdef long nonreduced = 0, total = 0
    cdef int ucoef[MAXBUF]
    cdef int u4sq[MAXBUF]
    cdef int acoef[MAXBUF]
    cdef int asq[MAXBUF]
    cdef int h[MAXBUF]
    cdef int e, udeg, hdeg, adeg
    cdef long ucode, acode, n_a, n_u, c, four
    cdef long delta
    four = 4 % p
    n_a = 1
    for i in range(d + 1):
        n_a *= q
    for e in range(d + 1):
        n_u = 1
        for i in range(e):
            n_u *= q
        ucode = 0
        while ucode < n_u:
            # build u = x^e + (digits of ucode)
            p_zero(ucoef, MAXBUF)
            c = ucode
            for i in range(e):
                ucoef[i] = c % q
                c //= q
            ucoef[e] = 1
            udeg = e
            # 4 * u^2
            p_zero(u4sq, MAXBUF)
            for i in range(udeg + 1):
                if ucoef[i]:
                    for j in range(udeg + 1):
                        if ucoef[j]:
                            u4sq[i + j] = add[u4sq[i + j], mul[mul[ucoef[i], ucoef[j]], four]]
            for acode in range(n_a):
                c = acode
                for i in range(d + 1):
                    acoef[i] = c % q
                    c //= q
                adeg = p_degree(acoef, d)
                # h = a^2 - 4u^2
                p_zero(asq, 2 * d + 1)
                if adeg >= 0:
                    for i in range(adeg + 1):
                        if acoef[i]:
                            for j in range(adeg + 1):
                                if acoef[j]:
                                    asq[i + j] = add[asq[i + j], mul[acoef[i], acoef[j]]]
                for i in range(2 * d + 1):
                    h[i] = add[asq[i], neg[u4sq[i]]]
                hdeg = p_degree(h, 2 * d)
                total += 1
                if hdeg < 0:
                    nonreduced += 1
                    continue
                delta = delta_fin(h, hdeg, p, add, mul, neg, inv, prt)
                delta += (2 * d - hdeg) // 2
                hist[delta] += 1
            ucode += 1
    return hist_np, nonreduced, total
