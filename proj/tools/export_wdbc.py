"""Write the Wisconsin diagnostic breast cancer data as a noisylab CSV.

Uses the copy bundled with scikit-learn: the ten "mean" features and a
label column (1 = malignant).
"""

import argparse
import csv

from sklearn.datasets import load_breast_cancer


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output", help="CSV file to write")
    args = parser.parse_args()

    data = load_breast_cancer()
    names = [n.replace(" ", "_") for n in data.feature_names[:10]]
    with open(args.output, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(names + ["label"])
        for row, target in zip(data.data[:, :10], data.target):
            writer.writerow([repr(float(v)) for v in row] + [1 - int(target)])


if __name__ == "__main__":
    main()
