#pragma once

// JSON Schema documents (draft-07 subset) for every file format the CLI reads
// or writes. The copies under docs/schemas/ are generated from these strings;
// a unit test keeps them in sync.

#include <map>
#include <string>

namespace soslab::schemas {

inline const std::map<std::string, std::string>& all() {
    static const std::map<std::string, std::string> docs = {
        {"polynomial", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "polynomial",
  "type": "object",
  "required": ["nvars", "terms"],
  "properties": {
    "nvars": {"type": "integer", "minimum": 1},
    "terms": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["exps", "num", "den"],
        "properties": {
          "exps": {"type": "array", "items": {"type": "integer", "minimum": 0}},
          "num": {"type": ["integer", "string"]},
          "den": {"type": ["integer", "string"]}
        }
      }
    }
  }
})JSON"},
        {"float_polynomial", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "float_polynomial",
  "type": "object",
  "required": ["nvars", "terms"],
  "properties": {
    "nvars": {"type": "integer", "minimum": 1},
    "terms": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["exps", "coeff"],
        "properties": {
          "exps": {"type": "array", "items": {"type": "integer", "minimum": 0}},
          "coeff": {"type": "number"}
        }
      }
    }
  }
})JSON"},
        {"graph", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "graph",
  "type": "object",
  "required": ["n", "edges"],
  "properties": {
    "n": {"type": "integer", "minimum": 1},
    "edges": {
      "type": "array",
      "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}
    }
  }
})JSON"},
        {"partial_matrix", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "partial_matrix",
  "type": "object",
  "required": ["n", "entries"],
  "properties": {
    "n": {"type": "integer", "minimum": 1},
    "entries": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["i", "j", "v"],
        "properties": {
          "i": {"type": "integer", "minimum": 0},
          "j": {"type": "integer", "minimum": 0},
          "v": {"type": "number"}
        }
      }
    }
  }
})JSON"},
        {"matrix", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "matrix",
  "type": "array",
  "items": {"type": "array", "items": {"type": "number"}}
})JSON"},
        {"sdp_problem", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "sdp_problem",
  "type": "object",
  "required": ["n", "constraints"],
  "properties": {
    "n": {"type": "integer", "minimum": 1},
    "mode": {"type": "string", "enum": ["minimize", "feasibility"]},
    "c": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    "constraints": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["a", "b"],
        "properties": {
          "a": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
          "b": {"type": "number"}
        }
      }
    }
  }
})JSON"},
        {"sdp_outcome", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "sdp_outcome",
  "type": "object",
  "required": ["status", "iterations", "objective", "residuals", "y"],
  "properties": {
    "status": {"type": "string", "enum": ["optimal", "feasible", "infeasible", "max_iterations"]},
    "iterations": {"type": "integer"},
    "objective": {"type": "number"},
    "dual_objective": {"type": "number"},
    "residuals": {
      "type": "object",
      "required": ["primal", "dual", "x_lambda_min"],
      "properties": {
        "primal": {"type": "number"},
        "dual": {"type": "number"},
        "x_lambda_min": {"type": "number"}
      }
    },
    "y": {"type": "array", "items": {"type": "number"}},
    "x": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    "certificate": {
      "type": "object",
      "required": ["y", "b_dot_y", "lambda_max_sum_yA"],
      "properties": {
        "y": {"type": "array", "items": {"type": "number"}},
        "b_dot_y": {"type": "number"},
        "lambda_max_sum_yA": {"type": "number"}
      }
    },
    "note": {"type": "string"}
  }
})JSON"},
        {"certify_result", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "certify_result",
  "type": "object",
  "required": ["status"],
  "properties": {
    "status": {"type": "string", "enum": ["sos", "not_sos", "indeterminate"]},
    "certificate": {
      "type": "object",
      "required": ["basis", "gram", "squares", "residual"],
      "properties": {
        "basis": {"type": "object"},
        "gram": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "squares": {"type": "array", "items": {"type": "object"}},
        "residual": {"type": "number"}
      }
    },
    "refutation": {
      "type": "object",
      "properties": {
        "functional": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["exps", "value"],
            "properties": {
              "exps": {"type": "array", "items": {"type": "integer", "minimum": 0}},
              "value": {"type": "number"}
            }
          }
        },
        "q_matrix": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "value_on_p": {"type": "number"},
        "delta": {"type": "number"},
        "q_lambda_min": {"type": "number"},
        "reason": {"type": "string"}
      }
    },
    "note": {"type": "string"}
  }
})JSON"},
        {"completion_result", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "completion_result",
  "type": "object",
  "required": ["status", "rank"],
  "properties": {
    "status": {"type": "string", "enum": ["completed", "no_completion", "minor_violation", "indeterminate"]},
    "rank": {"type": "integer"},
    "matrix": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    "violating_clique": {"type": "array", "items": {"type": "integer"}},
    "certificate": {
      "type": "object",
      "required": ["y"],
      "properties": {
        "y": {"type": "array", "items": {"type": "number"}},
        "lambda_max_sum_yA": {"type": "number"}
      }
    },
    "note": {"type": "string"}
  }
})JSON"},
        {"chordal_report", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "chordal_report",
  "type": "object",
  "required": ["chordal"],
  "properties": {
    "chordal": {"type": "boolean"},
    "peo": {"type": "array", "items": {"type": "integer"}},
    "witness_cycle": {"type": "array", "items": {"type": "integer"}},
    "maximal_cliques": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    "clique_number": {"type": "integer"},
    "smallest_chordless_cycle": {"type": ["integer", "null"]},
    "hankel_index_prediction": {"type": ["integer", "null"]}
  }
})JSON"},
        {"newton_report", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "newton_report",
  "type": "object",
  "required": ["vertices", "half_lattice_points", "necessary_check"],
  "properties": {
    "vertices": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    "half_lattice_points": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    "necessary_check": {
      "type": "object",
      "required": ["pass"],
      "properties": {"pass": {"type": "boolean"}, "reason": {"type": "string"}}
    }
  }
})JSON"},
        {"hankel_report", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "hankel_report",
  "type": "object",
  "required": ["matrix", "rank", "psd", "recovery"],
  "properties": {
    "matrix": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    "rank": {"type": "integer"},
    "psd": {"type": "boolean"},
    "recovery": {"type": "string", "enum": ["point", "not_rank_one", "not_veronese_consistent"]},
    "recovered_point": {"type": "array", "items": {"type": "number"}}
  }
})JSON"},
        {"qp_trace", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "qp_trace",
  "type": "object",
  "required": ["n", "d", "ambient_dim", "initial_dim_i2", "steps", "complete", "qp"],
  "properties": {
    "n": {"type": "integer"},
    "d": {"type": "integer"},
    "ambient_dim": {"type": "integer"},
    "initial_dim_i2": {"type": "integer"},
    "steps": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["point", "dim_before", "dim_after", "drop", "codim_bound"],
        "properties": {
          "point": {"type": "array", "items": {"type": "integer"}},
          "dim_before": {"type": "integer"},
          "dim_after": {"type": "integer"},
          "drop": {"type": "integer"},
          "codim_bound": {"type": "integer"}
        }
      }
    },
    "complete": {"type": "boolean"},
    "qp": {"type": "integer"},
    "castelnuovo": {
      "type": "object",
      "required": ["bound", "dim_i2", "equality"],
      "properties": {
        "bound": {"type": ["integer", "string"]},
        "dim_i2": {"type": "integer"},
        "equality": {"type": "boolean"}
      }
    },
    "pythagoras_lower_bound": {"type": "integer"}
  }
})JSON"},
        {"cayley_bacharach", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "cayley_bacharach",
  "type": "object",
  "required": ["points", "lambda", "mu", "eigenvalues", "rank", "evaluation_rank", "q_matrix", "extreme_ray"],
  "properties": {
    "points": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    "lambda": {"type": "array", "items": {"type": "number"}},
    "mu": {"type": "array", "items": {"type": "number"}},
    "eigenvalues": {"type": "array", "items": {"type": "number"}},
    "rank": {"type": "integer"},
    "evaluation_rank": {"type": "integer"},
    "q_matrix": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
    "extreme_ray": {
      "type": "object",
      "required": ["is_extreme", "solution_space_dim"],
      "properties": {
        "is_extreme": {"type": "boolean"},
        "solution_space_dim": {"type": "integer"}
      }
    },
    "attempts": {"type": "integer"}
  }
})JSON"},
        {"hilbert_case", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "hilbert_case",
  "type": "object",
  "required": ["n", "degree", "case"],
  "properties": {
    "n": {"type": "integer"},
    "degree": {"type": "integer"},
    "case": {"type": "string", "enum": ["equality", "strict"]}
  }
})JSON"},
        {"forms_list", R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "forms_list",
  "type": "object",
  "required": ["forms"],
  "properties": {"forms": {"type": "array", "items": {"type": "string"}}}
})JSON"}};
    return docs;
}

}  // namespace soslab::schemas
