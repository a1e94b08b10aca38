"""Noisy shifted sphere, reads x1 x2 seed from argv, prints y."""
import random
import sys

x1, x2, seed = float(sys.argv[1]), float(sys.argv[2]), int(sys.argv[3])
random.seed(seed)
y = (x1 - 1.0) ** 2 + (x2 + 0.5) ** 2 + random.gauss(0.0, 0.01)
print(y)
