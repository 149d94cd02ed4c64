#pragma once

#include <string_view>
#include <vector>

namespace karamata {

struct Builtin {
    std::string_view name;
    int criterion;
    std::string_view summary;
    std::string_view text;  // identical to configs/<name>.json
};

inline const std::vector<Builtin>& builtins() {
    static const std::vector<Builtin> b = {
        {"gamma_log_power", 1, "gamma for the zero part exp(|ln r|^0.5): gamma(1), submultiplicativity, gamma >= Vhat and the log-limit",
         R"json({
  "name": "gamma_log_power",
  "description": "gamma for the zero part exp(|ln r|^0.5): gamma(1), submultiplicativity, gamma >= Vhat and the log-limit",
  "criterion": 1,
  "order": {
    "rho": 0,
    "zero_part": {
      "kind": "log_power",
      "A": 1,
      "alpha": 0.5
    }
  },
  "operation": {
    "name": "gamma_suite",
    "log_t": [
      16,
      36,
      100
    ],
    "expected": [
      0.25,
      0.16666666666666666,
      0.1
    ],
    "tol": 0.001,
    "submult_tol": 1e-06
  }
}
)json"},
        {"poisson_log_square", 2, "Poisson smoothing V1 of V = 1 + ln^2 r against V, with a tanh-sinh oracle",
         R"json({
  "name": "poisson_log_square",
  "description": "Poisson smoothing V1 of V = 1 + ln^2 r against V, with a tanh-sinh oracle",
  "criterion": 2,
  "order": {
    "rho": 0,
    "zero_part": {
      "kind": "log_of_log_power",
      "alpha": 2
    }
  },
  "operation": {
    "name": "poisson_smoothing",
    "r": [
      10000.0,
      1000000.0
    ],
    "bound": [
      0.05,
      0.02
    ],
    "tol": 1e-08
  }
}
)json"},
        {"regular_density", 3, "density V(x)/x, rho = 0.5 with L = 1 + 1/ln(e + r): one limit point x^-0.5 dx",
         R"json({
  "name": "regular_density",
  "description": "density V(x)/x, rho = 0.5 with L = 1 + 1/ln(e + r): one limit point x^-0.5 dx",
  "criterion": 3,
  "order": {
    "rho": 0.5,
    "zero_part": "inverse_log_factor"
  },
  "measure": {
    "kind": "order_density"
  },
  "operation": {
    "name": "limit_set",
    "schedule": {
      "kind": "geometric",
      "t_min": 1000.0,
      "t_max": 1000000.0,
      "per_decade": 30
    },
    "expect": "regular",
    "c": 1,
    "eps_cluster": 0.001,
    "tol": 0.001
  }
}
)json"},
        {"oscillating_density", 3, "density x^(2i) V(x)/x: limit points e^(2ic) u^(2i - 0.5) du on a circle",
         R"json({
  "name": "oscillating_density",
  "description": "density x^(2i) V(x)/x: limit points e^(2ic) u^(2i - 0.5) du on a circle",
  "criterion": 3,
  "order": {
    "rho": 0.5,
    "zero_part": "inverse_log_factor"
  },
  "measure": {
    "kind": "order_density",
    "lambda0": 2
  },
  "operation": {
    "name": "limit_set",
    "schedule": {
      "kind": "geometric",
      "t_min": 1000.0,
      "t_max": 1000000.0,
      "per_decade": 30
    },
    "expect": "circle",
    "lambda0": 2,
    "eps_cluster": 0.001,
    "tol": 0.01
  }
}
)json"},
        {"periodic_atoms", 4, "atoms 2^k with weight 2^k, rho = 1: mu_2t = mu_t and the limit set is {mu_tau : 1 <= tau < 2}",
         R"json({
  "name": "periodic_atoms",
  "description": "atoms 2^k with weight 2^k, rho = 1: mu_2t = mu_t and the limit set is {mu_tau : 1 <= tau < 2}",
  "criterion": 4,
  "order": {
    "rho": 1
  },
  "measure": {
    "kind": "periodic_atoms",
    "T": 2,
    "rho": 1,
    "atoms": [
      {
        "x": 1,
        "w": 1
      }
    ]
  },
  "operation": {
    "name": "limit_set",
    "schedule": {
      "kind": "lattice",
      "T": 2,
      "tau_count": 16,
      "m_min": 4,
      "m_max": 14
    },
    "expect": "periodic",
    "T": 2,
    "tau_count": 16,
    "eps_cluster": 0.001,
    "period_tol": 1e-12,
    "flow_shifts": [
      1.0442737824274138,
      1.241857812073484,
      2
    ]
  }
}
)json"},
        {"sparse_atoms", 5, "atoms at R_n = e^(n^2), rho = 1: a delta at 1 at t = R_n and the zero measure in between",
         R"json({
  "name": "sparse_atoms",
  "description": "atoms at R_n = e^(n^2), rho = 1: a delta at 1 at t = R_n and the zero measure in between",
  "criterion": 5,
  "order": {
    "rho": 1
  },
  "measure": {
    "kind": "sparse_atoms",
    "rho": 1
  },
  "operation": {
    "name": "sparse_check",
    "n": [
      3,
      4,
      5,
      6
    ],
    "bump": {
      "a": 0.5,
      "b": 2,
      "w": 0.25
    },
    "tol": 1e-06,
    "zero_tol": 1e-08
  }
}
)json"},
        {"periodic_kernel_limits", 6, "cluster values of J for the periodic atoms and a trapezoid kernel against int K d mu_tau",
         R"json({
  "name": "periodic_kernel_limits",
  "description": "cluster values of J for the periodic atoms and a trapezoid kernel against int K d mu_tau",
  "criterion": 6,
  "order": {
    "rho": 1
  },
  "measure": {
    "kind": "periodic_atoms",
    "T": 2,
    "rho": 1,
    "atoms": [
      {
        "x": 1,
        "w": 1
      }
    ]
  },
  "kernel": {
    "kind": "trapezoid",
    "a": 0.5,
    "b": 3,
    "w": 0.5
  },
  "operation": {
    "name": "limit_values_J",
    "T": 2,
    "tau_count": 16,
    "m_min": 4,
    "m_max": 14,
    "eps": 1e-06,
    "tol": 0.0001
  }
}
)json"},
        {"exp_kernel_s_limit", 7, "K = Exp, d mu = t^-0.3 dt: s has order rho + 1 and s-limit density Gamma(0.7) u^0.7",
         R"json({
  "name": "exp_kernel_s_limit",
  "description": "K = Exp, d mu = t^-0.3 dt: s has order rho + 1 and s-limit density Gamma(0.7) u^0.7",
  "criterion": 7,
  "order": {
    "rho": 0.7
  },
  "measure": {
    "kind": "explicit",
    "pieces": [
      {
        "a": 0,
        "b": "inf",
        "coef": 1,
        "s": -0.3
      }
    ]
  },
  "kernel": {
    "kind": "exp"
  },
  "operation": {
    "name": "s_limit",
    "schedule": {
      "kind": "geometric",
      "t_min": 1000.0,
      "t_max": 1000000.0,
      "per_decade": 10
    },
    "u": [
      0.5,
      1,
      2
    ],
    "tol": 0.01,
    "gamma_oracle_coef": 1
  }
}
)json"},
        {"exp_kernel_hardy", 7, "int e^(-t/r) d mu against mu((0,r]) for d mu = 2 ln t / t dt on t > 1, V = 1 + ln^2 r",
         R"json({
  "name": "exp_kernel_hardy",
  "description": "int e^(-t/r) d mu against mu((0,r]) for d mu = 2 ln t / t dt on t > 1, V = 1 + ln^2 r",
  "criterion": 7,
  "order": {
    "rho": 0,
    "zero_part": {
      "kind": "log_of_log_power",
      "alpha": 2
    }
  },
  "measure": {
    "kind": "explicit",
    "pieces": [
      {
        "a": 1,
        "b": "inf",
        "coef": 2,
        "s": -1,
        "log_power": 1
      }
    ]
  },
  "operation": {
    "name": "hardy_check",
    "r": [
      100.0,
      1000.0,
      10000.0,
      100000.0,
      1000000.0,
      10000000.0,
      100000000.0
    ],
    "tol": 0.2
  }
}
)json"},
        {"fn_identity_bump", 8, "F_n identity for a smooth bump kernel and mu = delta_2 + t dt on t > 1",
         R"json({
  "name": "fn_identity_bump",
  "description": "F_n identity for a smooth bump kernel and mu = delta_2 + t dt on t > 1",
  "criterion": 8,
  "measure": {
    "kind": "explicit",
    "atoms": [
      {
        "x": 2,
        "w": 1
      }
    ],
    "pieces": [
      {
        "a": 1,
        "b": "inf",
        "coef": 1,
        "s": 1
      }
    ]
  },
  "kernel": {
    "kind": "smooth_bump",
    "a": 0.5,
    "b": 2
  },
  "operation": {
    "name": "fn_identity",
    "n": [
      0,
      1,
      2
    ],
    "r": [
      1,
      3,
      10
    ],
    "tol": 1e-06
  }
}
)json"},
        {"wiener_lattice_kernel", 9, "Mellin symbol of chi(0,1] - 2 chi(0,1/2] at rho = 1: zeros at 2 pi k / ln 2",
         R"json({
  "name": "wiener_lattice_kernel",
  "description": "Mellin symbol of chi(0,1] - 2 chi(0,1/2] at rho = 1: zeros at 2 pi k / ln 2",
  "criterion": 9,
  "kernel": {
    "kind": "step_combo",
    "steps": [
      {
        "a": 0,
        "b": 1,
        "c": 1
      },
      {
        "a": 0,
        "b": 0.5,
        "c": -2
      }
    ]
  },
  "operation": {
    "name": "wiener_zero_scan",
    "rho": 1,
    "lambda_lo": -20,
    "lambda_hi": 20,
    "step": 0.01,
    "expect": "lattice",
    "lattice_base": 2,
    "tol": 1e-06
  }
}
)json"},
        {"wiener_exp_kernel", 9, "Mellin symbol of Exp at rho = 1, Gamma(1 + i lambda): no zeros",
         R"json({
  "name": "wiener_exp_kernel",
  "description": "Mellin symbol of Exp at rho = 1, Gamma(1 + i lambda): no zeros",
  "criterion": 9,
  "kernel": {
    "kind": "exp"
  },
  "operation": {
    "name": "wiener_zero_scan",
    "rho": 1,
    "lambda_lo": -20,
    "lambda_hi": 20,
    "step": 0.01,
    "expect": "nonvanishing",
    "tol": 1e-06
  }
}
)json"},
        {"carleman_lebesgue", 10, "Carleman transform of dx: i/z, the bound M(1 + 1/|y|) and spectrum {0}",
         R"json({
  "name": "carleman_lebesgue",
  "description": "Carleman transform of dx: i/z, the bound M(1 + 1/|y|) and spectrum {0}",
  "criterion": 10,
  "measure": {
    "kind": "lebesgue_line"
  },
  "operation": {
    "name": "carleman_suite",
    "oracle_points": 100,
    "tol": 1e-08,
    "M": 1,
    "expected_spectrum": [
      0
    ],
    "spectrum_tol": 0.05,
    "x_lo": -5,
    "x_hi": 5,
    "dx": 0.05
  }
}
)json"},
        {"carleman_exp_density", 10, "Carleman transform of e^(-3ix) dx: i/(z - 3) and spectrum {3}",
         R"json({
  "name": "carleman_exp_density",
  "description": "Carleman transform of e^(-3ix) dx: i/(z - 3) and spectrum {3}",
  "criterion": 10,
  "measure": {
    "kind": "exp_density_line",
    "lambda0": 3
  },
  "operation": {
    "name": "carleman_suite",
    "oracle_points": 100,
    "tol": 1e-08,
    "M": 1,
    "expected_spectrum": [
      3
    ],
    "spectrum_tol": 0.05,
    "x_lo": -5,
    "x_hi": 5,
    "dx": 0.05
  }
}
)json"},
        {"roundtrip_regular", 11, "K = Exp, d mu = t^-0.3 (1 + 1/(1 + ln(e + t))) dt: s regular, then mu regular with c/c1",
         R"json({
  "name": "roundtrip_regular",
  "description": "K = Exp, d mu = t^-0.3 (1 + 1/(1 + ln(e + t))) dt: s regular, then mu regular with c/c1",
  "criterion": 11,
  "order": {
    "rho": 0.7
  },
  "measure": {
    "kind": "log_perturbed_power",
    "rho": 0.7
  },
  "kernel": {
    "kind": "exp"
  },
  "operation": {
    "name": "tauberian_roundtrip",
    "schedule": {
      "kind": "geometric",
      "t_min": 1e+36,
      "t_max": 1e+40,
      "per_decade": 10
    },
    "tol": 0.02,
    "fit_tol": 0.001,
    "eps_cluster": 0.001
  }
}
)json"},
        {"roundtrip_periodic_control", 11, "atoms 100^k with weight 100^k, K = Exp: s oscillates and stage (i) fails",
         R"json({
  "name": "roundtrip_periodic_control",
  "description": "atoms 100^k with weight 100^k, K = Exp: s oscillates and stage (i) fails",
  "criterion": 11,
  "order": {
    "rho": 1
  },
  "measure": {
    "kind": "periodic_atoms",
    "T": 100,
    "rho": 1,
    "atoms": [
      {
        "x": 1,
        "w": 1
      }
    ]
  },
  "kernel": {
    "kind": "exp"
  },
  "operation": {
    "name": "tauberian_roundtrip",
    "schedule": {
      "kind": "geometric",
      "t_min": 10000.0,
      "t_max": 100000000.0,
      "per_decade": 10
    },
    "tol": 0.02,
    "zero_scan": false,
    "expect_failed_stage": "stage_i"
  }
}
)json"},
        {"exponential_solution_lattice", 12, "d mu = t^(-1 - 2 pi i/ln 2) dt is annihilated by t K(t), K = chi(0,1] - 2 chi(0,1/2]",
         R"json({
  "name": "exponential_solution_lattice",
  "description": "d mu = t^(-1 - 2 pi i/ln 2) dt is annihilated by t K(t), K = chi(0,1] - 2 chi(0,1/2]",
  "criterion": 12,
  "kernel": {
    "kind": "piecewise_power",
    "label": "t_times_lattice",
    "pieces": [
      {
        "a": 0,
        "b": 0.5,
        "c": -1,
        "s": 1
      },
      {
        "a": 0.5,
        "b": 1,
        "c": 1,
        "s": 1
      }
    ]
  },
  "operation": {
    "name": "exponential_solution",
    "lambdas": [
      9.064720283654388
    ],
    "coeffs": [
      1
    ],
    "log_r": [
      0,
      1,
      2
    ],
    "tol": 1e-06,
    "expect": "vanishing"
  }
}
)json"},
        {"exponential_solution_control", 12, "lambda = 1 is not a symbol zero: the residual stays large",
         R"json({
  "name": "exponential_solution_control",
  "description": "lambda = 1 is not a symbol zero: the residual stays large",
  "criterion": 12,
  "kernel": {
    "kind": "piecewise_power",
    "label": "t_times_lattice",
    "pieces": [
      {
        "a": 0,
        "b": 0.5,
        "c": -1,
        "s": 1
      },
      {
        "a": 0.5,
        "b": 1,
        "c": 1,
        "s": 1
      }
    ]
  },
  "operation": {
    "name": "exponential_solution",
    "lambdas": [
      1
    ],
    "coeffs": [
      1
    ],
    "log_r": [
      0,
      1,
      2
    ],
    "tol": 0.001,
    "expect": "nonvanishing"
  }
}
)json"},
    };
    return b;
}

inline const Builtin* find_builtin(std::string_view name) {
    for (const auto& b : builtins())
        if (b.name == name) return &b;
    return nullptr;
}

}  // namespace karamata
