"""Pure-Python versions of the series convolution kernels."""


def conv_int(a, b):
    """Exact integer convolution of two coefficient lists."""
    na, nb = len(a), len(b)
    if not na or not nb:
        return []
    out = [0] * (na + nb - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def conv_prec(va, ma, vb, mb):
    """Min-plus convolution giving the absolute precision of each product coefficient.

    The error of ``a_i * b_j`` has valuation at least ``min(ma_i + vb_j, mb_j + va_i)``;
    ``va``/``vb`` are valuation lower bounds capped at the coefficient precision.
    """
    na, nb = len(va), len(vb)
    if not na or not nb:
        return []
    big = 1 << 40
    out = [big] * (na + nb - 1)
    for i in range(na):
        mi, vi = ma[i], va[i]
        for j in range(nb):
            t = mi + vb[j]
            u = mb[j] + vi
            if u < t:
                t = u
            if t < out[i + j]:
                out[i + j] = t
    return out


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def reduce_numerators(p, cap, shift, nums, precs):
    """Cap ``precs`` at ``cap``, raise ``shift`` until every modulus ``p**(precs[i] + shift)``
    is integral, reduce ``nums[i]`` modulo it, strip common factors of p from the shift
    and drop trailing zeros known to full precision.  Returns (shift, nums, precs).
    """
    precs = [m if m < cap else cap for m in precs]
    nums = list(nums)
    n = len(nums)
    need = max([shift] + [-m for m in precs])
    if need > shift:
        scale = p ** (need - shift)
        nums = [a * scale for a in nums]
        shift = need
    strip = shift
    for i in range(n):
        mod_exp = precs[i] + shift
        a = nums[i] % p ** mod_exp if mod_exp > 0 else 0
        nums[i] = a
        if strip > 0:
            t = _vp(a, p) if a else mod_exp
            if t < strip:
                strip = t
    if strip > 0:
        d = p ** strip
        nums = [a // d for a in nums]
        shift -= strip
    while nums and nums[-1] == 0 and precs[-1] >= cap:
        nums.pop()
        precs.pop()
    return shift, nums, precs
