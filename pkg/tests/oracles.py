"""Dense reference constructions that share no code with the package.

Everything here is built from explicit truncated ladder matrices, matrix
exponentials and einsum contractions.
"""

import math

import numpy as np
from scipy.linalg import expm


def destroy(dim):
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def two_mode_squeezed_vacuum(r, dim, phi=0.0):
    """exp(r (e^{i phi} a^dag b^dag - h.c.)) |0,0> as a (dim, dim) amplitude grid.

    The generator keeps n_a - n_b fixed, so it is exponentiated on the
    |n, n> ladder only; the last rung is a truncation edge and should be
    ignored by callers.
    """
    k = np.arange(1, dim, dtype=float)
    gen = np.diag(r * np.exp(1j * phi) * k, -1) - np.diag(r * np.exp(-1j * phi) * k, 1)
    ladder = expm(gen)[:, 0]
    return np.diag(ladder)


def minkowski_one_particle(r, dim):
    """(cosh r b_I^dag - sinh r b_II) applied to the squeezed vacuum, as (I, II) array."""
    vac = two_mode_squeezed_vacuum(r, dim)
    a = destroy(dim)
    return math.cosh(r) * (a.conj().T @ vac) - math.sinh(r) * (vac @ a.T)


def receiver_state(x, y, r, dim):
    """Region-I state of x |1>_M|0>_M + y |0>_M|1>_M, indexed [n1, n2, n1', n2']."""
    one, vac = minkowski_one_particle(r, dim), two_mode_squeezed_vacuum(r, dim)
    psi = x * np.einsum("ab,cd->abcd", one, vac) + y * np.einsum("ab,cd->abcd", vac, one)
    # axes: R1_I, R1_II, R2_I, R2_II; trace the II axes
    return np.einsum("abcd,ebfd->acef", psi, psi.conj())


def ptrace_dense(rho, dims, keep):
    """Partial trace of a dense matrix over a tensor product with the given dims."""
    n = len(dims)
    t = rho.reshape(*dims, *dims)
    letters = "abcdefghijklmnop"
    ket = list(letters[:n])
    bra = list(letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            bra[i] = ket[i]
    out = "".join(ket[i] for i in keep) + "".join(bra[i] for i in keep)
    res = np.einsum("".join(ket) + "".join(bra) + "->" + out, t)
    d = int(np.prod([dims[i] for i in keep]))
    return res.reshape(d, d)


def entropy_bits(rho):
    lam = np.linalg.eigvalsh(rho)
    lam = lam[lam > 1e-15]
    return float(-np.sum(lam * np.log2(lam)))
