"""Reference sequences and counts for the order-60, weight-36 instance.

B1..B4 are the published zero-autocorrelation compressed candidates at
d=20, m=3.  X5 is the lexicographically minimal representative of the
third affine orbit of content [16,0,0,0,0,3,1]; see the repository README
for why the published list double-covers one orbit (B4 = sigma(B2) for
sigma: j -> 3j+2 mod 20) and omits this one.
"""

B1 = [1, 1, 1, 1, -1, 1, -1, -1, 3, 1, -1, -1, -1, -1, 1, -1, 1, 1, 3, -1]
B2 = [0, 0, 0, 0, 0, 0, 0, 0, 3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 3, -3]
B3 = [0, 0, 0, 0, 0, 0, 0, 3, 0, 3, 0, 0, 0, 0, 0, 0, 0, 3, 0, -3]
B4 = [0, 0, 0, 0, 0, 0, 3, 0, 0, 3, 0, 0, 0, 0, 0, 0, 3, 0, 0, -3]
X5 = [0, 0, 0, 0, 3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 3, 0, 0, 0, 0, -3]

CONTENT_B1 = [0, 9, 9, 0, 0, 2, 0]
CONTENT_B2 = [16, 0, 0, 0, 0, 3, 1]

FIBER_B1 = 6**18  # 101559956668416
FIBER_B2 = 7**16  # 33232930569601
