# Copyright 2026 The qconnect Authors - All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent high-precision reference values for the C++ test suite.

Every quantity is computed straight from its defining series or product with
mpmath at 40 digits; nothing here shares code with the library. Run with
`python3 compute_oracles.py` and paste the printed literals into the tests.
"""

import mpmath as mp

mp.mp.dps = 40


def theta(z, q, N=200):
    return mp.fsum(q ** (-mp.mpf(n) * (n - 1) / 2) * z ** n for n in range(-N, N + 1))


def dtheta_z(z, q, N=200):
    return mp.fsum(n * q ** (-mp.mpf(n) * (n - 1) / 2) * z ** n for n in range(-N, N + 1))


def annulus(c, q):
    eps = int(mp.floor(mp.log(abs(c)) / mp.log(abs(q))))
    return eps, c / q ** eps


def qchar(c, z, q):
    eps, cbar = annulus(c, q)
    return z ** eps * theta(z, q) / theta(z / cbar, q)


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: {{{mp.nstr(v.real, 17)}, {mp.nstr(v.imag, 17)}}}")


q4 = mp.mpf(4)
qc = mp.mpf(1.5) * mp.expj(mp.mpf("0.7"))

show("theta(1; q=4)", theta(1, q4))
show("theta(0.3+0.8i; q=4)", theta(mp.mpc("0.3", "0.8"), q4))
show("theta(2.5-1.1i; q=1.5e^{0.7i})", theta(mp.mpc("2.5", "-1.1"), qc, 400))
show("theta(-0.7+0.2i; q=10)", theta(mp.mpc("-0.7", "0.2"), mp.mpf(10)))
show("qlog(1; q=4)", dtheta_z(1, q4) / theta(1, q4))
show("qlog(1.3+0.4i; q=4)", dtheta_z(mp.mpc("1.3", "0.4"), q4) / theta(mp.mpc("1.3", "0.4"), q4))
show("qchar(c=2.5+1i, z=0.6-0.9i; q=4)", qchar(mp.mpc("2.5", "1"), mp.mpc("0.6", "-0.9"), q4))
show("qchar(c=11+3i, z=1.7+0.2i; q=4)", qchar(mp.mpc("11", "3"), mp.mpc("1.7", "0.2"), q4))

# Reduction at 0 of the scalar system 1 - z/2: F(z) = prod_{i>=1} (1 - q^-i z / 2).
def poch_coeffs(q, K=8):
    coeffs = [mp.mpf(1)] + [mp.mpf(0)] * K
    for i in range(1, 400):
        f = -q ** (-i) / 2
        for k in range(K, 0, -1):
            coeffs[k] += f * coeffs[k - 1]
    return coeffs


for k, c in enumerate(poch_coeffs(q4, 5)):
    show(f"pochhammer coeff {k} (q=4)", c)

# Bilateral sum p(z) = sum_n a(q^n z) for a = z/(1+z^2).
def p_bilateral(z, q, N=400):
    return mp.fsum(q ** n * z / (1 + (q ** n * z) ** 2) for n in range(-N, N + 1))


for z in [mp.mpc("0.7", "0.2"), mp.mpc("-1.3", "0.5"), mp.mpc("2.2", "-0.9")]:
    show(f"p({mp.nstr(z, 4)}) for a=z/(1+z^2), q=4", p_bilateral(z, q4))

# Rank-1 regular example: prod u_i Theta(-z/u_i) / (v_i Theta(-z/v_i)), u=(2,3), v=(6,1).
def p_rank1(z, q):
    num = 2 * theta(-z / 2, q) * 3 * theta(-z / 3, q)
    den = 6 * theta(-z / 6, q) * 1 * theta(-z, q)
    return num / den


za, zb = mp.mpc("0.8", "0.3"), mp.mpc("1.9", "-0.6")
show("p_rank1(zb)/p_rank1(za)", p_rank1(zb, q4) / p_rank1(za, q4))

# Reduction at infinity of c (1 - 1/(2z)): in w = 1/z, G(w) = prod_{i>=0} 1 / (1 - q^-i w / 2).
def inv_poch_coeffs(q, K=6):
    coeffs = [mp.mpf(1)] + [mp.mpf(0)] * K
    for i in range(0, 400):
        f = q ** (-i) / 2
        # multiply by 1 / (1 - f w) = sum f^j w^j
        new = [mp.mpf(0)] * (K + 1)
        for k in range(K + 1):
            new[k] = mp.fsum(coeffs[k - j] * f ** j for j in range(k + 1))
        coeffs = new
    return coeffs


for k, c in enumerate(inv_poch_coeffs(q4, 5)):
    show(f"inverse pochhammer coeff {k} (q=4)", c)

# Telescoped regular product for [[1, a], [0, 1]]: sum_{n>=1} a(q^-n z).
z = mp.mpc("1.3", "0.4")
show("sum_{n>=1} a(q^-n z), z=1.3+0.4i", mp.fsum(q4 ** (-n) * z / (1 + (q4 ** (-n) * z) ** 2) for n in range(1, 400)))
