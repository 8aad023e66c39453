"""Numpy oracle: which global phase alpha makes e^{i alpha} A X B X C equal
diag(1, e^{2 pi i / 2^k}) with gamma = 0 and beta + delta = 2 pi / 2^k."""
import numpy as np

pi = np.pi
X = np.array([[0, 1], [1, 0]])


def ry(t):
    return np.array([[np.cos(t / 2), -np.sin(t / 2)], [np.sin(t / 2), np.cos(t / 2)]])


def rz(t):
    return np.diag([np.exp(-1j * t / 2), np.exp(1j * t / 2)])


for k in range(1, 7):
    phi = 2 * pi / 2**k
    beta, gamma, delta = 0.0, 0.0, phi
    A = rz(beta) @ ry(gamma / 2)
    B = ry(-gamma / 2) @ rz(-(delta + beta) / 2)
    C = rz((delta - beta) / 2)
    U = np.diag([1, np.exp(1j * phi)])
    for alpha, label in ((pi / 2**k, "+pi/2^k"), (-pi / 2**k, "-pi/2^k")):
        err = np.abs(np.exp(1j * alpha) * A @ X @ B @ X @ C - U).max()
        print(f"k={k} alpha={label}: |e^ia AXBXC - U| = {err:.3e}  |ABC-I| = {np.abs(A@B@C-np.eye(2)).max():.1e}")
