#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace dilcp::theory {

enum class Regime {
  griffiths_1d,
  griffiths_er,
  griffiths_2d,
  supercrit_er,
  supercrit_2d,
  critical_er,
  critical_2d,
};

std::string_view to_string(Regime regime) noexcept;
Regime parse_regime(std::string_view name);

/// power_law: sigma_N ~ N^exponent. exp_linear: log sigma_N ~ rate * N
/// (possibly divided by log N, see formula_text). stretched: log sigma_N ~
/// N^exponent, equivalently u = 1/N at t = exp(N^exponent).
enum class Form { power_law, exp_linear, stretched };

std::string_view to_string(Form form) noexcept;

struct AsymptoticPrediction {
  Regime regime = Regime::griffiths_1d;
  Form form = Form::power_law;
  /// Exponent (power_law, stretched) or rate (exp_linear). Always positive.
  double value = 0.0;
  std::map<std::string, double> constants;
  std::string formula_text;
  std::string validity;

  /// {regime, form, constants, formula_text, validity, value}
  nlohmann::json to_json() const;
};

/// Builds the prediction for a regime from named constants:
///   griffiths_1d  p, gamma2          power_law, exponent gamma2 / ln(1/p)
///   griffiths_er  nu, gamma2         power_law, exponent gamma2 / ln(1/nu)
///   griffiths_2d  p, gamma2, eta2    power_law, exponent eta2 gamma2
///   supercrit_er  gamma2, eta_er     exp_linear, rate gamma2 eta_er
///   supercrit_2d  gamma2, eta2       exp_linear in N / log N, rate gamma2 eta2
///   critical_er   (none)             stretched, exponent 1/3
///   critical_2d   (none)             stretched, exponent 1/2
/// The griffiths regimes also report decay_exponent, the density exponent
/// u(t) ~ t^{-decay_exponent} obtained by inverting t = N^exponent. Extra
/// constants are carried through. A missing constant raises ParameterError
/// naming it.
AsymptoticPrediction scaling_predictions(Regime regime, const std::map<std::string, double>& params);

}  // namespace dilcp::theory
