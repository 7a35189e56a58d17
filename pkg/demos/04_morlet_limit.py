"""The gaussian packet becomes a Morlet wavelet as its steepness grows.

For large p the packet is a plane-wave carrier under a Gaussian envelope
with widths sx^2 = 4 gamma^2/p, sy^2 = gamma eps1/p, sz^2 = gamma eps2/p
and wavenumber p/(2 gamma).  The deviation shrinks like p^(-1/5) on the
comparison window used here.
"""

import numpy as np

import wavecwt as wc

gamma, eps = 1.0, 2.0
alpha = 0.4  # window exponent: |x| <= gamma p^-alpha etc.

print(f"gamma = {gamma}, eps1 = eps2 = {eps}, window exponent alpha = {alpha}")
print()
print("  p     carrier k    sigma_x    sigma_y    max rel deviation")
print("  ---------------------------------------------------------")

previous = None
for p in (25.0, 50.0, 100.0, 200.0, 400.0):
    packet = wc.gaussian_packet(p, gamma, eps, eps)
    morlet = wc.morlet_asymptote(p, gamma, eps, eps)

    xm = gamma * p**-alpha
    ym = np.sqrt(eps * gamma) * p**-alpha
    x = np.linspace(-xm, xm, 17)
    y = np.linspace(-ym, ym, 17)
    Z, Y, X = np.meshgrid(y, y, x, indexing="ij")
    exact = packet.position(X, Y, Z, 0.0)
    deviation = float(np.max(np.abs(exact - morlet(X, Y, Z)) / np.abs(exact)))

    kappa = p / (2 * gamma)
    sx = np.sqrt(4 * gamma**2 / p)
    sy = np.sqrt(gamma * eps / p)
    trend = "" if previous is None else ("  (down)" if deviation < previous else "  (UP!)")
    print(f"  {p:5.0f}  {kappa:9.1f}  {sx:9.3f}  {sy:9.3f}    {deviation:.4f}{trend}")
    previous = deviation

print()
print("the two agree exactly at the origin by construction:")
packet = wc.gaussian_packet(100.0, gamma, eps, eps)
morlet = wc.morlet_asymptote(100.0, gamma, eps, eps)
origin_packet = complex(packet.position(np.array(0.0), 0.0, 0.0, 0.0))
origin_morlet = complex(morlet(np.array(0.0), 0.0, 0.0))
print(f"  packet(0) = {origin_packet:.6e}")
print(f"  morlet(0) = {origin_morlet:.6e}")
