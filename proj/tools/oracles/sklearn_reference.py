# Copyright 2026 The namedis Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes tests/data/sklearn_reference.json: fitted-model outputs from
scikit-learn on fixed random data, used as an external oracle for the
logistic regression and Gaussian naive Bayes implementations."""

import json
import sys

import numpy as np
from sklearn.linear_model import LogisticRegression
from sklearn.naive_bayes import GaussianNB


def dataset(rng, n, sparse):
    x = rng.uniform(0, 1, size=(n, 6))
    if sparse:
        # Mostly-zero columns like coauthor similarities.
        x[:, :3] *= rng.uniform(0, 1, size=(n, 3)) < 0.2
    logits = 4 * x[:, 0] + 3 * x[:, 3] - 3.5
    y = (rng.uniform(0, 1, size=n) < 1 / (1 + np.exp(-logits))).astype(int)
    y[0], y[1] = 1, 0
    return x, y


def main(out):
    rng = np.random.default_rng(2019)
    cases = []
    for n, sparse in [(60, False), (400, False), (300, True)]:
        x, y = dataset(rng, n, sparse)
        probe = rng.uniform(-0.2, 1.2, size=(50, 6))
        lr = LogisticRegression(C=1.0, tol=1e-12, max_iter=100000).fit(x, y)
        nb = GaussianNB().fit(x, y)
        cases.append({
            "x": x.tolist(),
            "y": y.tolist(),
            "probe": probe.tolist(),
            "lr_prob": lr.predict_proba(probe)[:, 1].tolist(),
            "lr_coef": lr.coef_[0].tolist() + [float(lr.intercept_[0])],
            "nb_prob": nb.predict_proba(probe)[:, 1].tolist(),
        })
    with open(out, "w") as f:
        json.dump({"cases": cases}, f)


if __name__ == "__main__":
    main(sys.argv[1])
