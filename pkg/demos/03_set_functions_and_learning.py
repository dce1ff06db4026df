"""Set functions, compression, and feature synergy in learning.

Any function on subsets satisfies the chain rule once its conditional is
defined as a difference, so every set function carries an information
diagram.  This covers the classical submodular information functions
(entropy among them), compression-based information functions, and the
generalization-error "advantage" of a learner, whose degree-2 term
measures feature synergy: for the XOR target it is -1, the signature of
two individually useless but jointly perfect features.

Run:  python demos/03_set_functions_and_learning.py
"""

import numpy as np

from infodiagram import (
    advantage_instance,
    bayes_error_evaluator,
    compressor_setfunction,
    conditional_mutual,
    empirical_from_rows,
    entropy_setfunction,
    indices_of,
    interaction,
    is_submodular,
    r1_instance,
    verify_hu,
)

XOR_ROWS = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]


def main():
    rng = np.random.default_rng(5)

    print("Entropy as a set function R(A) = H(X_A) is submodular:")
    masses = rng.uniform(0.05, 1.0, 8)
    points = tuple((b >> 2 & 1, b >> 1 & 1, b & 1) for b in range(8))
    dist, gens = empirical_from_rows(points, weights=masses)
    entropic = entropy_setfunction(dist, gens, "bits")
    ok, witness = is_submodular(entropic)
    print(f"  exhaustive check over all subset pairs: {'submodular' if ok else witness}")
    print(f"  I(X1;X2)     = {conditional_mutual(entropic, 0b001, 0b010, 0):+.4f} bits")
    print(f"  I(X1;X2|X3)  = {conditional_mutual(entropic, 0b001, 0b010, 0b100):+.4f} bits")
    print()

    print("A compression-based information function over three byte blobs")
    print("(two identical, one random):")
    blob = bytes(rng.integers(0, 256, 400, dtype=np.uint8))
    text = b"the quick brown fox jumps over the lazy dog " * 12
    fn = compressor_setfunction([text, text, blob])
    for mask in range(1, 8):
        print(f"  R{str(list(indices_of(mask))):12s} = {fn(mask):6.0f} compressed bytes")
    inst = r1_instance(fn)
    print(f"  shared information of the twin blobs, degree 2: "
          f"{interaction(inst, (0b001, 0b010), 0):.0f} bytes")
    print(f"  identity sweep residual: {verify_hu(inst, tol=1e-12).max_residual:.1e}")
    print()

    print("Generalization error under log loss for the XOR target (bits):")
    dist, gens = empirical_from_rows(XOR_ROWS)
    evaluator = bayes_error_evaluator(dist, gens[:2], gens[2], "bits")
    for mask in range(4):
        feats = "{}" if mask == 0 else str(set(indices_of(mask)))
        print(f"  E({feats:6s}) = {evaluator(mask):.0f}")
    adv = advantage_instance(evaluator)
    print(f"  advantage of feature 1 alone:        {interaction(adv, (0b01,), 0):+.0f}")
    print(f"  advantage of feature 1 given 2:      {adv.k1c(0b01, 0b10):+.0f}")
    print(f"  mutual advantage (feature synergy):  {interaction(adv, (0b01, 0b10), 0):+.0f}")
    print()
    print("A negative mutual advantage says the features are worth more together")
    print("than their individual contributions suggest.")


if __name__ == "__main__":
    main()
