"""JSON Schemas for the files written by the command-line tool."""

_int_string = {"type": "string", "pattern": "^-?[0-9]+$"}

EXACT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "exact distribution or normalised p.g.f. coefficients",
    "type": "object",
    "required": ["kind", "method", "k", "m", "multinomial", "rows"],
    "properties": {
        "kind": {"enum": ["exact", "pgf", "oracle"]},
        "method": {"type": "string"},
        "k": {"type": "integer", "minimum": 1},
        "m": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "multinomial": _int_string,
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "numerator", "denominator", "decimal"],
                "properties": {
                    "n": {"type": "integer", "minimum": 0},
                    "numerator": _int_string,
                    "denominator": _int_string,
                    "decimal": {"type": "number"},
                },
            },
        },
    },
}

HISTOGRAM = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Monte Carlo histogram of k-hop path counts",
    "type": "object",
    "required": ["kind", "k", "r0", "seed", "trials", "rows"],
    "properties": {
        "kind": {"const": "simulate"},
        "k": {"type": "integer", "minimum": 1},
        "r0": {"type": "number"},
        "m": {"type": ["array", "null"], "items": {"type": "integer", "minimum": 1}},
        "lambda": {"type": ["number", "null"]},
        "seed": {"type": "integer", "minimum": 0},
        "trials": {"type": "integer", "minimum": 1},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "count", "frequency"],
                "properties": {
                    "n": {"type": "integer", "minimum": 0},
                    "count": {"type": "integer", "minimum": 1},
                    "frequency": {"type": "number", "minimum": 0, "maximum": 1},
                },
            },
        },
    },
}

REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "exact-versus-simulation comparison report",
    "type": "object",
    "required": ["kind", "trials", "total_variation", "chi_square", "degrees_of_freedom",
                 "p_value", "exact_mean", "empirical_mean", "passed", "table"],
    "properties": {
        "kind": {"const": "validate"},
        "total_variation": {"type": "number", "minimum": 0, "maximum": 1},
        "chi_square": {"type": "number", "minimum": 0},
        "degrees_of_freedom": {"type": "integer", "minimum": 0},
        "p_value": {"type": "number", "minimum": 0, "maximum": 1},
        "exact_mean_fraction": {"type": ["string", "null"]},
        "passed": {"type": "boolean"},
        "table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "exact", "empirical"],
                "properties": {
                    "n": {"type": "integer", "minimum": 0},
                    "exact": {"type": "number"},
                    "empirical": {"type": "number"},
                    "exact_numerator": _int_string,
                    "exact_denominator": _int_string,
                },
            },
        },
    },
}
