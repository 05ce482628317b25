#!/usr/bin/env python3
"""Writes docs/schemas/<command>.{input,output}.schema.json for every CLI command."""

import argparse
import json
import pathlib
import sys

DRAFT = "https://json-schema.org/draft/2020-12/schema"

NUM = {"type": "number"}
# Non-finite doubles are written as null.
ONUM = {"type": ["number", "null"]}
INT = {"type": "integer"}
COUNT = {"type": "integer", "minimum": 0}
BOOL = {"type": "boolean"}
STR = {"type": "string"}


def obj(required, optional=None, closed=True):
    props = dict(required)
    props.update(optional or {})
    out = {"type": "object", "properties": props, "required": sorted(required)}
    if closed:
        out["additionalProperties"] = False
    return out


def arr(items, min_items=None):
    out = {"type": "array", "items": items}
    if min_items is not None:
        out["minItems"] = min_items
    return out


def pair(item):
    return {"type": "array", "prefixItems": [item, item], "minItems": 2, "maxItems": 2}


def kind(name, fields, optional=None):
    req = {"kind": {"const": name}}
    req.update(fields)
    return obj(req, optional)


PERIODIC = {
    "oneOf": [
        kind("truncated_cosine", {"rho": NUM}),
        kind("constant", {"c": NUM}),
        kind("support", {"points": arr(pair(NUM), 1)}),
        kind("samples", {"values": arr(NUM, 16)},
             {"interpolation": {"enum": ["trigonometric", "piecewise_linear"]}}),
        kind("positive_part", {"inner": {"$ref": "#/$defs/periodic"}}),
        kind("negative_part", {"inner": {"$ref": "#/$defs/periodic"}}),
        kind("scaled", {"c": NUM, "inner": {"$ref": "#/$defs/periodic"}}),
        kind("sum", {"terms": arr({"$ref": "#/$defs/periodic"}, 2)}),
    ]
}

GAUGE = {
    "oneOf": [
        kind("power", {"p": NUM}),
        kind("linear", {"slope": NUM}),
        kind("piecewise", {"points": arr(pair(NUM), 2)}),
    ]
}

DIVISOR = arr({"type": "array", "prefixItems": [NUM, NUM, {"type": "integer", "minimum": 1}],
               "minItems": 3, "maxItems": 3})

RADIAL = {
    "oneOf": [
        obj({"t": arr(NUM), "values": arr(NUM)}, {"kind": {"const": "samples"}}),
        kind("boundary_power", {"coef": NUM, "exponent": NUM}),
        kind("uniform", {"value": NUM}),
    ]
}

CHARGE = obj({}, {
    "atoms": arr({"type": "array", "prefixItems": [NUM, NUM, NUM], "minItems": 3, "maxItems": 3}),
    "density": {"oneOf": [{"type": "null"}, obj(
        {"radial": {"$ref": "#/$defs/radial"}, "angular": {"$ref": "#/$defs/periodic"}},
        {"clip": {"enum": ["none", "positive", "negative"]}})]},
})

ANGLES = {"angles": {"enum": ["fixed", "equidistributed"]}, "theta0": NUM}
GENERATOR = {
    "oneOf": [
        kind("power_law", {"alpha": NUM}, ANGLES),
        kind("geometric", {"q": NUM}, ANGLES),
        kind("explicit", {"divisor": {"$ref": "#/$defs/divisor"}}),
    ]
}

DEFS = {
    "periodic": PERIODIC,
    "gauge": GAUGE,
    "divisor": DIVISOR,
    "radial": RADIAL,
    "charge": CHARGE,
    "generator": GENERATOR,
}

REF = {k: {"$ref": f"#/$defs/{k}"} for k in DEFS}

# Output-side shapes.
PERIODIC_OUT = REF["periodic"]
WITNESS = obj({"theta1": ONUM, "theta": ONUM, "theta2": ONUM, "defect": ONUM})
TRIG_REPORT = obj({"method": {"enum": ["sine_kernel", "second_difference", "sine_kernel_random"]},
                   "rho": ONUM, "n_grid": COUNT, "tol": ONUM, "passed": BOOL, "max_defect": ONUM,
                   "witnesses": arr(WITNESS)})
GAUGE_CLASS = obj({"convex_ok": BOOL, "zero_at_zero_ok": BOOL, "normalized_ok": BOOL,
                   "max_convexity_violation": ONUM, "value_at_one": ONUM})
GX = obj({"derivative_bound_ok": BOOL, "increasing_ok": BOOL, "worst_derivative_gap": ONUM, "n_points": COUNT})
SUBHARM = obj({
    "grid": obj({"n_r": COUNT, "n_theta": COUNT, "r_min": ONUM, "r_max": ONUM, "dr": ONUM, "dtheta": ONUM,
                 "theta_offset": ONUM}),
    "tol": ONUM, "min_laplacian": ONUM, "scale": ONUM, "lower_bound_ok": BOOL, "pointwise_bound_ok": BOOL,
    "max_pointwise_violation": ONUM, "audited_nodes": COUNT, "skipped_nodes": COUNT,
    "kink_angles": arr(ONUM), "kink_radii": arr(ONUM),
    "witnesses": arr(obj({"r": ONUM, "theta": ONUM, "laplacian": ONUM, "lower_bound": ONUM})),
})
MEMBERSHIP = obj({"positive_ok": BOOL, "bounded_ok": BOOL, "boundary_zero_ok": BOOL, "min_value": ONUM,
                  "sup_value": ONUM, "b_rho": ONUM, "epsilons": arr(ONUM), "boundary_values": arr(ONUM)})
CLASSIFICATION = {"enum": ["ForcesZero", "Inconclusive"]}


def command(name):
    return {"command": {"const": name}}


COMMANDS = {
    "check-h": (
        obj({"h": REF["periodic"]}, {"rho": NUM, "grid": COUNT, "tol": NUM, "random_triples": COUNT}),
        obj({**command("check-h"), "h": PERIODIC_OUT, "descriptor": STR, "rho": ONUM, "min_value": ONUM,
             "nonnegative": BOOL, "sine_kernel": TRIG_REPORT, "second_difference": TRIG_REPORT,
             "methods_agree": BOOL, "passed": BOOL},
            {"random": TRIG_REPORT, "seed": INT}),
    ),
    "check-g": (
        obj({"g": REF["gauge"]}, {"normalized": BOOL}),
        obj({**command("check-g"), "g": REF["gauge"], "descriptor": STR, "normalization_required": BOOL,
             "class": GAUGE_CLASS, "derivative_facts": GX, "passed": BOOL}),
    ),
    "testfn-audit": (
        obj({"gauge": REF["gauge"], "h": REF["periodic"]}, {"rho": NUM, "nr": COUNT, "ntheta": COUNT, "tol": NUM}),
        obj({**command("testfn-audit"),
             "spec": obj({"gauge": REF["gauge"], "h": PERIODIC_OUT, "rho": ONUM, "r_rho": ONUM, "b_rho": ONUM}),
             "subharmonicity": SUBHARM, "membership": MEMBERSHIP, "passed": BOOL}),
    ),
    "count": (
        {**obj({}, {"charge": REF["charge"], "divisor": REF["divisor"], "h": REF["periodic"], "r": NUM}),
         "oneOf": [{"required": ["charge"], "not": {"required": ["divisor"]}},
                   {"required": ["divisor"], "not": {"required": ["charge"]}}]},
        obj({**command("count"), "r": ONUM, "weight": STR, "value": ONUM},
            {"counting_measure": INT, "winding_count": {"type": ["integer", "null"]}, "blaschke_sum": ONUM}),
    ),
    "gap": (
        obj({"u": {"oneOf": [REF["divisor"], REF["generator"], REF["charge"]]},
             "M": {"oneOf": [REF["generator"], REF["divisor"], REF["charge"]]},
             "family": arr(obj({"g": REF["gauge"], "h": REF["periodic"], "rho": NUM}), 1)},
            {"epsilon": {"oneOf": [NUM, arr(NUM, 1)]}, "rescale": BOOL}),
        obj({**command("gap"),
             "rows": arr(obj({"lhs": ONUM, "rhs_integral": ONUM, "gap": ONUM, "epsilon": ONUM, "g": STR, "h": STR,
                              "rho": ONUM, "member": COUNT})),
             "empirical_constant": arr(obj({"epsilon": ONUM, "value": ONUM, "argmax": COUNT}))}),
    ),
    "uniqueness": (
        obj({"Z": REF["generator"], "g": REF["gauge"], "h": REF["periodic"]},
            {"M": {"oneOf": [REF["generator"], REF["divisor"], REF["charge"]]}, "levels": COUNT, "window": COUNT,
             "tau": NUM}),
        obj({**command("uniqueness"), "epsilons": arr(ONUM), "majorant_partials": arr(ONUM),
             "zero_partials": arr(ONUM), "majorant_stalls": BOOL, "zeros_grow": BOOL,
             "classification": CLASSIFICATION, "Z": REF["generator"], "g": STR, "h": STR, "window": COUNT,
             "tau": ONUM, "blaschke_partials": arr(ONUM)}),
    ),
    "indicator": (
        {**obj({}, {"u": {"oneOf": [
                        obj({"kind": {"const": "re_power"}, "n": {"type": "integer", "minimum": 0, "maximum": 64}},
                            {"coef": NUM}),
                        obj({"kind": {"const": "abs_power"}, "p": NUM}, {"coef": NUM})]},
                    "samples": obj({"radii": arr(NUM), "values": arr(arr(NUM))}),
                    "radii": arr(NUM), "n_theta": COUNT, "rho": NUM}),
         "oneOf": [{"required": ["u", "radii"], "not": {"required": ["samples"]}},
                   {"required": ["samples"], "not": {"required": ["u"]}}]},
        obj({**command("indicator"), "rho": ONUM, "radii": arr(ONUM), "n_theta": COUNT, "values": arr(ONUM),
             "check": TRIG_REPORT, "passed": BOOL}),
    ),
}

ERROR = obj({"error": obj({"code": {"enum": ["input_error", "precondition_failed", "numerical_failure",
                                              "internal_error", "usage"]},
                           "message": STR},
                          {"gauge": {}, "trig": {}, "h_min": ONUM, "h_max": ONUM})})


def document(name, side, body):
    out = {"$schema": DRAFT, "$id": f"{name}.{side}.schema.json", "title": f"diskzero {name} {side}"}
    out.update(body)
    out["$defs"] = DEFS
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "docs" / "schemas"))
    parser.add_argument("--check", action="store_true", help="fail if the files on disk are stale")
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    files = {"error.schema.json": document("error", "object", ERROR)}
    for name, (inp, outp) in COMMANDS.items():
        for side, body in (("input", inp), ("output", outp)):
            files[f"{name}.{side}.schema.json"] = document(name, side, body)

    if args.check:
        stale = [f for f, doc in files.items()
                 if not (out / f).exists() or (out / f).read_text() != json.dumps(doc, indent=2) + "\n"]
        for f in stale:
            print(f"stale: {f}")
        return 1 if stale else 0
    out.mkdir(parents=True, exist_ok=True)
    for f, doc in files.items():
        (out / f).write_text(json.dumps(doc, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
