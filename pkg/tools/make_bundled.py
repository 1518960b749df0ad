"""Regenerate the JSON structure files shipped in src/superjacobi/data."""

import json
from pathlib import Path

from superjacobi.exprcli.printer import print_expr
from superjacobi.factories import (
    CocycleData,
    LieAlgebroidData,
    lie_algebroid_structure,
    make_de_rham,
    make_jacobi_algebroid,
    make_odd_contact,
    solvable_2d_data,
    su2_data,
)
from superjacobi.identities import CORE_IDS

OUT = Path(__file__).resolve().parents[1] / "src" / "superjacobi" / "data"


def document(J, description, checks=None):
    doc = {
        "name": J.name,
        "description": description,
        "coordinates": [
            {"name": c.name, "parity": "odd" if c.parity else "even", "weight": c.weight}
            for c in J.base
        ],
        "structure": {
            "S": print_expr(J.S),
            "Q": {c.name: print_expr(q) for c, q in zip(J.base, J.Q.components) if q},
        },
    }
    if checks is not None:
        doc["checks"] = checks
    return doc


def catalog(**trials):
    return [{"id": i.value, "trials": trials.get(i.value, 100), "max_degree": 3, "max_coeff": 5, "seed": 0}
            for i in CORE_IDS]


def perturbed_su2(key, name):
    d = su2_data()
    s = dict(d.structure)
    s[key] = s.get(key, 0) + 1
    J = lie_algebroid_structure(LieAlgebroidData(d.base, d.fiber_parities, structure=s), name=name)
    return J


def main():
    main_thm = {"JACOBI_LODAY": 200, "LEFT_LEIBNIZ": 200}
    files = {
        "odd_contact_1": document(make_odd_contact(1), "odd contact structure on R^{1|2}", catalog(**main_thm)),
        "odd_contact_2": document(make_odd_contact(2), "odd contact structure on R^{2|3}", catalog()),
        "qmanifold_derham_2": document(make_de_rham(2), "de Rham Q-manifold on R^{2|2}, S = 0",
                                       catalog(**main_thm)),
        "lie_algebroid_su2": document(lie_algebroid_structure(su2_data(), name="lie-algebroid-su2"),
                                      "su(2) over a point as the Q-manifold Pi su(2)", catalog()),
        "su2_perturbed_offdiagonal": document(
            perturbed_su2((0, 1, 0), "su2-perturbed-offdiagonal"),
            "su(2) with [e1,e2] = e3 + e1: Q is not homological", catalog()),
        "su2_perturbed_diagonal": document(
            perturbed_su2((0, 1, 2), "su2-perturbed-diagonal"),
            "su(2) with [e1,e2] = 2 e3: still a Lie algebra, Q stays homological", catalog()),
        "jacobi_algebroid_solvable": document(
            make_jacobi_algebroid(solvable_2d_data(), CocycleData({0: 1}), name="jacobi-algebroid-solvable"),
            "[e1,e2] = e2 over a point with the cocycle e^1", catalog()),
        "jacobi_algebroid_solvable_zero_cocycle": document(
            make_jacobi_algebroid(solvable_2d_data(), CocycleData({}), name="jacobi-algebroid-zero-cocycle"),
            "[e1,e2] = e2 over a point with the zero cocycle", catalog()),
        "jacobi_algebroid_bad_cocycle": document(
            make_jacobi_algebroid(solvable_2d_data(), CocycleData({1: 1}), name="jacobi-algebroid-bad-cocycle"),
            "[e1,e2] = e2 with e^2, which is not a cocycle: invariance fails", catalog()),
    }
    # keep the familiar factored form of S for the contact examples
    files["odd_contact_1"]["structure"]["S"] = "p_xs * (p_x + xs * p_tau)"
    files["odd_contact_2"]["structure"]["S"] = (
        "p_xs_1 * (p_x_1 + xs_1 * p_tau) + p_xs_2 * (p_x_2 + xs_2 * p_tau)")
    OUT.mkdir(exist_ok=True)
    for name, doc in files.items():
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print("wrote", name)


if __name__ == "__main__":
    main()
