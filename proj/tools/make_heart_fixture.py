#!/usr/bin/env python3
"""Write a synthetic stand-in for the UCI heart-failure clinical records CSV.

Same header, row count (299), column count (13) and class split (96 deaths /
203 survivors) as the public dataset; the values are drawn from a seeded RNG
with roughly matching marginals, so the file is reproducible byte-for-byte.

    python3 tools/make_heart_fixture.py fixtures/heart_failure_clinical_records_dataset.csv
"""

import argparse
import csv
import random

COLUMNS = [
    "age", "anaemia", "creatinine_phosphokinase", "diabetes", "ejection_fraction",
    "high_blood_pressure", "platelets", "serum_creatinine", "serum_sodium", "sex",
    "smoking", "time", "DEATH_EVENT",
]
N_ROWS = 299
N_DEATHS = 96


def row(rng, death):
    age = rng.choice([40, 45, 50, 55, 60, 65, 70, 75, 80, 85, 90, 95, 60.667])
    age = min(95, max(40, age + rng.choice([0, 0, 0, 1, 2, 3])))
    cpk = int(min(7861, max(23, rng.lognormvariate(5.6, 0.9))))
    ef = rng.choice([14, 15, 17, 20, 25, 30, 35, 38, 40, 45, 50, 55, 60, 62, 65, 70, 80])
    if death and ef > 45 and rng.random() < 0.5:
        ef = rng.choice([20, 25, 30])
    platelets = round(min(850000, max(25100, rng.gauss(263000, 97000))), -2)
    creat = round(min(9.4, max(0.5, rng.lognormvariate(0.2 + 0.25 * death, 0.4))), 2)
    sodium = int(min(148, max(113, round(rng.gauss(136.6 - death, 4.4)))))
    time = int(min(285, max(4, rng.gauss(70 if death else 158, 60 if death else 67))))
    return [
        age,
        int(rng.random() < 0.43),
        cpk,
        int(rng.random() < 0.42),
        ef,
        int(rng.random() < 0.35),
        platelets,
        creat,
        sodium,
        int(rng.random() < 0.65),
        int(rng.random() < 0.32),
        time,
        int(death),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out")
    ap.add_argument("--seed", type=int, default=299)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    labels = [1] * N_DEATHS + [0] * (N_ROWS - N_DEATHS)
    rng.shuffle(labels)
    with open(args.out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(COLUMNS)
        for death in labels:
            w.writerow(row(rng, death))


if __name__ == "__main__":
    main()
