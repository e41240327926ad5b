#!/usr/bin/env python3
"""Generate the synthetic payments fixture and its state-level ground truth.

The output is committed under tests/fixtures; rerunning with the same seed
reproduces it byte for byte.

    python3 tools/gen_fixture.py tests/fixtures
"""

import csv
import datetime
import random
import sys
from pathlib import Path

SEED = 20170101
ROWS = 500

# Missing cells per column; they sum to 468 (5.2% of 9000).
MISSING = {
    "id": 13,
    "applicable_manufacturer_or_applicable_gpo_making_payment_id": 0,
    "date_of_payment": 27,
    "general_transaction_id": 34,
    "program_year": 5,
    "product_name": 16,
    "original_product_name": 0,
    "product_ndc": 25,
    "product_is_drug": 8,
    "payment_has_many": 29,
    "teaching_hospital_id": 36,
    "physician_profile_id": 32,
    "recipient_state": 0,
    "applicable_manufacturer_or_applicable_gpo_making_payment_name": 35,
    "teaching_hospital_ccn": 19,
    "product_slug": 41,
    "total_amount_of_payment_usdollars": 47,
    "number_of_payments_included_in_total_amount": 101,
}

# product -> (count, manufacturer, ndc)
PRODUCTS = {
    "Xarelto": (212, "Janssen Pharmaceuticals, Inc", "5045857810"),
    "Eliquis": (65, "Bristol-Myers Squibb", "0003089321"),
    "Invokana": (40, "Janssen Pharmaceuticals, Inc", "5045814030"),
    "Brilinta": (34, "AstraZeneca Pharmaceuticals LP", "0186077739"),
    "Farxiga": (30, "AstraZeneca Pharmaceuticals LP", "0310621030"),
    "Januvia": (26, "Merck Sharp & Dohme Corporation", "0006027731"),
    "Victoza": (22, "Novo Nordisk Inc", "0169406012"),
    "Bydureon": (18, "AstraZeneca Pharmaceuticals LP", "0310652001"),
    "Humira": (14, "AbbVie, Inc.", "0074379902"),
    "Linzess": (11, "Forest Laboratories, Inc.", "0456120130"),
    "Belviq": (9, "Eisai Inc.", "6276201001"),
    "Tradjenta": (7, "Boehringer Ingelheim Pharmaceuticals, Inc.", "0597014030"),
    "Pradaxa": (6, "Boehringer Ingelheim Pharmaceuticals, Inc.", "0597013560"),
    "Savaysa": (5, "Daiichi Sankyo Inc.", "6546600101"),
    "Aciphex": (1, "Eisai Inc.", "6276202030"),
}

# state -> (rows, population in thousands)
STATES = {
    "CA": (56, 38800), "NY": (40, 19750), "TX": (35, 26960), "FL": (31, 19890),
    "PA": (23, 12790), "IL": (22, 12880), "OH": (20, 11590), "NJ": (18, 8940),
    "GA": (16, 10100), "MI": (16, 9910), "NC": (15, 9940), "MA": (14, 6750),
    "VA": (13, 8330), "TN": (12, 6550), "MD": (12, 5980), "AZ": (11, 6730),
    "IN": (10, 6600), "MO": (10, 6060), "WA": (10, 7060), "LA": (9, 4650),
    "KY": (9, 4410), "AL": (9, 4850), "SC": (8, 4830), "MN": (8, 5460),
    "CO": (8, 5360), "WI": (7, 5760), "CT": (7, 3600), "OK": (6, 3880),
    "MS": (6, 2990), "AR": (6, 2970), "KS": (5, 2900), "IA": (5, 3110),
    "UT": (4, 2940), "NV": (4, 2840), "NM": (3, 2090), "WV": (3, 1850),
    "NE": (3, 1880), "ME": (2, 1330), "RI": (2, 1060), "DE": (2, 940),
}

COLUMNS = list(MISSING)


def state_demographics(rng, state, population):
    urban = min(0.95, 0.45 + population / 80000 + rng.uniform(-0.05, 0.05))
    white = rng.uniform(0.55, 0.9)
    black = rng.uniform(0.02, 0.35) * (1 - white) / 0.45
    asian = max(0.01, 0.02 + population / 900000 + rng.uniform(-0.01, 0.02))
    hispanic = rng.uniform(0.02, 0.4)
    return {
        "state": state,
        "population": population * 1000,
        "white": round(white, 4),
        "black": round(black, 4),
        "asian": round(asian, 4),
        "hispanic": round(hispanic, 4),
        "rural": round(1 - urban, 4),
        "median_age": round(rng.uniform(34, 44), 1),
    }


def main(out_dir):
    rng = random.Random(SEED)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    products = [p for p, (n, _, _) in PRODUCTS.items() for _ in range(n)]
    states = [s for s, (n, _) in STATES.items() for _ in range(n)]
    assert len(products) == ROWS and len(states) == ROWS
    rng.shuffle(products)
    rng.shuffle(states)

    physicians = [rng.randrange(100000, 999999) for _ in range(229)]
    start = datetime.date(2014, 1, 1)
    rows = []
    for i in range(ROWS):
        product = products[i]
        _, maker, ndc = PRODUCTS[product]
        state = states[i]
        scale = 2.5 if state in ("CA", "NY") else 1.0
        amount = max(0.14, round(rng.lognormvariate(2.7, 1.3) * scale, 2))
        if rng.random() < 0.01:
            amount = 5000.0
        rows.append({
            "id": 1000 + i * 7 + rng.randrange(7),
            "applicable_manufacturer_or_applicable_gpo_making_payment_id":
                rng.choice([100000000232, 100000000255, 100000000291, 100000005432]),
            "date_of_payment": (start + datetime.timedelta(days=rng.randrange(365))).isoformat(),
            "general_transaction_id": 300000000 + rng.randrange(10**8),
            "program_year": 2014,
            "product_name": product,
            "original_product_name": product,
            "product_ndc": ndc,
            "product_is_drug": "t",
            "payment_has_many": "f" if rng.random() < 0.57 else "t",
            "teaching_hospital_id": 0,
            "physician_profile_id": rng.choice(physicians),
            "recipient_state": state,
            "applicable_manufacturer_or_applicable_gpo_making_payment_name": maker,
            "teaching_hospital_ccn": 0,
            "product_slug": "drug-" + product.lower(),
            "total_amount_of_payment_usdollars": f"{amount:.2f}",
            "number_of_payments_included_in_total_amount": rng.choice([1, 1, 1, 1, 2, 2, 3, 4, 12]),
        })

    # product_name loses 12 Xarelto and 4 Eliquis rows; original_product_name
    # keeps them, so the two columns differ only there.
    xarelto = [i for i in range(ROWS) if products[i] == "Xarelto"]
    eliquis = [i for i in range(ROWS) if products[i] == "Eliquis"]
    for i in rng.sample(xarelto, 12) + rng.sample(eliquis, 4):
        rows[i]["product_name"] = ""
    for column, n in MISSING.items():
        if column == "product_name":
            continue
        for i in rng.sample(range(ROWS), n):
            rows[i][column] = ""
    assert sum(1 for r in rows for c in COLUMNS if r[c] == "") == 468

    with open(out / "docs_payments.csv", "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)

    gt_columns = ["state", "population", "white", "black", "asian", "hispanic", "rural", "median_age"]
    with open(out / "state_census.csv", "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=gt_columns, lineterminator="\n")
        w.writeheader()
        for state, (_, population) in sorted(STATES.items()):
            w.writerow(state_demographics(rng, state, population))
        # keys with no payments in the dataset
        for state, population in (("VT", 626), ("WY", 584), ("AK", 737)):
            w.writerow(state_demographics(rng, state, population))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
