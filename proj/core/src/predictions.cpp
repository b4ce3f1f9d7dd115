#include <array>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "dilcp/error.hpp"
#include "dilcp/theory/predictions.hpp"
#include "dilcp/theory/theory.hpp"

namespace dilcp::theory {

namespace {

constexpr std::array<std::pair<Regime, std::string_view>, 7> kRegimeNames{{
    {Regime::griffiths_1d, "griffiths_1d"},
    {Regime::griffiths_er, "griffiths_er"},
    {Regime::griffiths_2d, "griffiths_2d"},
    {Regime::supercrit_er, "supercrit_er"},
    {Regime::supercrit_2d, "supercrit_2d"},
    {Regime::critical_er, "critical_er"},
    {Regime::critical_2d, "critical_2d"},
}};

double need(const std::map<std::string, double>& params, Regime regime, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) {
    throw ParameterError(
        fmt::format("scaling_predictions({}): constant '{}' has not been estimated", to_string(regime), name));
  }
  if (!std::isfinite(it->second)) {
    throw ParameterError(fmt::format("scaling_predictions({}): constant '{}' is not finite", to_string(regime), name));
  }
  return it->second;
}

double positive(Regime regime, const std::string& name, double value) {
  if (!(value > 0.0)) {
    throw DomainError(fmt::format("scaling_predictions({}): {} must be positive, got {}", to_string(regime), name,
                                  value));
  }
  return value;
}

double dilution_log(Regime regime, const std::string& name, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError(fmt::format("scaling_predictions({}): {} must lie in (0, 1), got {}", to_string(regime), name, q));
  }
  return std::log(1.0 / q);
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
  for (const auto& [r, name] : kRegimeNames) {
    if (r == regime) return name;
  }
  return "unknown";
}

Regime parse_regime(std::string_view name) {
  for (const auto& [r, n] : kRegimeNames) {
    if (n == name) return r;
  }
  throw ParameterError(fmt::format("unknown regime '{}'", name));
}

std::string_view to_string(Form form) noexcept {
  switch (form) {
    case Form::power_law:
      return "power_law";
    case Form::exp_linear:
      return "exp_linear";
    case Form::stretched:
      return "stretched";
  }
  return "unknown";
}

nlohmann::json AsymptoticPrediction::to_json() const {
  nlohmann::json j;
  j["regime"] = std::string(to_string(regime));
  j["form"] = std::string(to_string(form));
  j["value"] = value;
  j["constants"] = constants;
  j["formula_text"] = formula_text;
  j["validity"] = validity;
  return j;
}

AsymptoticPrediction scaling_predictions(Regime regime, const std::map<std::string, double>& params) {
  AsymptoticPrediction out;
  out.regime = regime;
  out.constants = params;
  switch (regime) {
    case Regime::griffiths_1d: {
      const double p = need(params, regime, "p");
      const double g = positive(regime, "gamma2", need(params, regime, "gamma2"));
      const double b = dilution_log(regime, "p", p);
      out.form = Form::power_law;
      out.value = g / b;
      out.constants["decay_exponent"] = b / g;
      out.formula_text = "sigma_N >= N^(gamma2 / log(1/p)); u(t) ~ t^(-log(1/p) / gamma2)";
      out.validity = "site-diluted interval, lambda above the 1D critical value, N large";
      break;
    }
    case Regime::griffiths_er: {
      const double nu = need(params, regime, "nu");
      const double g = positive(regime, "gamma2", need(params, regime, "gamma2"));
      const double b = dilution_log(regime, "nu", nu);
      out.form = Form::power_law;
      out.value = g / b;
      out.constants["decay_exponent"] = b / g;
      if (auto it = params.find("A"); it != params.end()) {
        out.constants["theta"] = alpha_nu(nu) / positive(regime, "A", it->second);
      }
      out.formula_text = "sigma_N >= N^(gamma2 / log(1/nu)); u(t) ~ t^(-alpha(nu) / A)";
      out.validity = "subcritical ER dilution nu < 1, lambda above the 1D critical value";
      break;
    }
    case Regime::griffiths_2d: {
      need(params, regime, "p");
      const double g = positive(regime, "gamma2", need(params, regime, "gamma2"));
      const double eta = positive(regime, "eta2", need(params, regime, "eta2"));
      out.form = Form::power_law;
      out.value = eta * g;
      out.constants["decay_exponent"] = 1.0 / (eta * g);
      out.formula_text = "sigma_N >= N^(eta2(p) gamma2)";
      out.validity = "subcritical 2D dilution p < 1/2, lambda above the 1D critical value";
      break;
    }
    case Regime::supercrit_er: {
      const double g = positive(regime, "gamma2", need(params, regime, "gamma2"));
      const double eta = positive(regime, "eta_er", need(params, regime, "eta_er"));
      out.form = Form::exp_linear;
      out.value = g * eta;
      out.formula_text = "sigma_N >= exp(gamma2 eta_ER N)";
      out.validity = "supercritical ER dilution nu > 1";
      break;
    }
    case Regime::supercrit_2d: {
      const double g = positive(regime, "gamma2", need(params, regime, "gamma2"));
      const double eta = positive(regime, "eta2", need(params, regime, "eta2"));
      out.form = Form::exp_linear;
      out.value = g * eta;
      out.constants["log_correction"] = 1.0;
      out.formula_text = "sigma_N >= exp(gamma2 eta2 N / log N)";
      out.validity = "supercritical 2D dilution p > 1/2";
      break;
    }
    case Regime::critical_er:
      out.form = Form::stretched;
      out.value = 1.0 / 3.0;
      out.constants["alpha"] = out.value;
      out.formula_text = "longest path ~ N^(1/3); u(t) = 1/N at t = exp(N^(1/3))";
      out.validity = "ER dilution on the critical line nu = 1";
      break;
    case Regime::critical_2d:
      out.form = Form::stretched;
      out.value = 0.5;
      out.constants["alpha"] = out.value;
      out.formula_text = "crossing path ~ N^(1/2); u(t) = 1/N at t = exp(N^(1/2))";
      out.validity = "2D bond dilution at p = 1/2";
      break;
  }
  return out;
}

}  // namespace dilcp::theory
