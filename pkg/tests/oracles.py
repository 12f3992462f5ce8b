"""Independent test oracles (never imported by the package).

* ``SUq2Operators``: the standard Hilbert-space realization of Pol(SU_q(2)),
  π(a)e_n = sqrt(1-q^{2n}) e_{n-1},  π(c)e_n = e^{iθ} q^n e_n,
  and the Haar state h(x) = (1-q²) Σ_n q^{2n} ⟨e_n, π(x) e_n⟩ averaged over θ.
  Nothing here uses the engine's rewriting system or its Haar solve.
* ``dft_matrix``: numpy's FFT applied to the identity.
"""
from __future__ import annotations

import numpy as np


class SUq2Operators:
    def __init__(self, q: float, size: int = 80, theta: float = 0.7):
        self.q = q
        n = np.arange(size)
        self.A = np.diag(np.sqrt(1 - q ** (2 * n[1:])), k=1).astype(complex)
        self.C = np.diag(np.exp(1j * theta) * q ** n).astype(complex)
        self.size = size
        self.weights = (1 - q * q) * q ** (2 * n)

    def monomial(self, idx) -> np.ndarray:
        s, l, m = idx
        a = self.A if s >= 0 else self.A.conj().T
        out = np.linalg.matrix_power(a, abs(s))
        out = out @ np.linalg.matrix_power(self.C, l) @ np.linalg.matrix_power(self.C.conj().T, m)
        return out

    def element(self, coeffs: dict) -> np.ndarray:
        out = np.zeros((self.size, self.size), complex)
        for idx, c in coeffs.items():
            out += complex(c) * self.monomial(idx)
        return out

    def haar(self, idx) -> float:
        s, l, m = idx
        if l != m:  # the θ-average kills nonzero c-charge
            return 0.0
        return float(np.real(np.sum(self.weights * np.diag(self.monomial(idx)))))


def dft_matrix(n: int) -> np.ndarray:
    """F[h, k] = exp(-2πi hk/n) (numpy's forward-FFT convention)."""
    return np.fft.fft(np.eye(n))
