#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "adelic/error.hpp"
#include "adelic/oracle.hpp"
#include "adelic/primtop.hpp"
#include "adelic/quasiorbit.hpp"
#include "json_io.hpp"

namespace adelic::cli {

namespace {

using json_io::json;

// Inline JSON, @path, or "-" for standard input.
class Inputs {
 public:
  explicit Inputs(std::istream& in) : in_(in) {}

  json load(const std::string& text) {
    std::string body;
    if (text == "-") {
      if (stdin_used_) fail(ErrorCode::InvalidArgument, "standard input can feed only one flag");
      stdin_used_ = true;
      body.assign(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
    } else if (!text.empty() && text.front() == '@') {
      std::ifstream file(text.substr(1));
      if (!file) fail(ErrorCode::InvalidArgument, "cannot read " + text.substr(1));
      body.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    } else {
      body = text;
    }
    try {
      return json::parse(body);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::ParseError, e.what());
    }
  }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

json error_document(std::string_view code, const std::string& detail) {
  return {{"error", {{"code", std::string(code)}, {"detail", detail}}}};
}

template <class F>
auto on_adele(const Adele& a, F&& f) {
  return std::visit(std::forward<F>(f), a);
}

FiniteAdele as_finite(const Adele& a) {
  if (!std::holds_alternative<FiniteAdele>(a)) fail(ErrorCode::InvalidArgument, "expected a finite adele");
  return std::get<FiniteAdele>(a);
}

// Both operands as finite adeles or both as full adeles.
template <class F>
json on_pair(const Adele& a, const Adele& b, F&& f) {
  if (a.index() != b.index()) fail(ErrorCode::InvalidArgument, "operands must both be finite or both be full");
  if (std::holds_alternative<FiniteAdele>(a)) return f(std::get<FiniteAdele>(a), std::get<FiniteAdele>(b));
  return f(std::get<FullAdele>(a), std::get<FullAdele>(b));
}

std::set<Prime> window_primes(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "window must be an array of primes");
  std::set<Prime> out;
  for (const json& p : j) out.insert(json_io::prime_from(p));
  return out;
}

std::set<ExtendedPrime> window_places(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "window must be an array of places");
  std::set<ExtendedPrime> out;
  for (const json& p : j) out.insert(json_io::place_from(p));
  return out;
}

json closure_document(const ClosedSetDescriptor& c) { return {{"closure", json_io::to_json(c)}}; }

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with adeles, quasi-orbits and primitive ideal spaces", "adele"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent the JSON output");

  Inputs inputs(in);
  std::function<json()> action;

  std::string adele_text, left_text, right_text, nbhd_text, set_text, character_text, window_text, points_text;
  std::string q_text, r_text;
  std::uint64_t p = 0;
  unsigned k = 0;
  bool division = false;
  WitnessOptions witness_options;
  SearchBudget budget;
  std::string window_budget_text;

  auto adele_opt = [&](CLI::App* sub) { sub->add_option("--adele", adele_text, "Adele (JSON)")->required(); };
  auto pair_opts = [&](CLI::App* sub, const char* what) {
    sub->add_option("--left", left_text, std::string("Left ") + what + " (JSON)")->required();
    sub->add_option("--right", right_text, std::string("Right ") + what + " (JSON)")->required();
  };
  auto set_opt = [&](CLI::App* sub) { sub->add_option("--set", set_text, "Set descriptor (JSON)")->required(); };

  auto* valuation_cmd = app.add_subcommand("valuation", "p-adic valuation of a rational");
  valuation_cmd->add_option("--q", q_text, "Rational")->required();
  valuation_cmd->add_option("--p", p, "Prime")->required();
  valuation_cmd->callback([&] {
    action = [&] { return json{{"valuation", json_io::to_json(valuation(parse_rational(q_text), Prime(p)))}}; };
  });

  auto* expand_cmd = app.add_subcommand("expand", "Truncated p-adic expansion of a rational");
  expand_cmd->add_option("--q", q_text, "Rational")->required();
  expand_cmd->add_option("--p", p, "Prime")->required();
  expand_cmd->add_option("--k", k, "Precision")->required();
  expand_cmd->callback([&] {
    action = [&] { return json{{"expansion", json_io::to_json(expand(parse_rational(q_text), Prime(p), k))}}; };
  });

  auto* zero_set_cmd = app.add_subcommand("zero-set", "Places where an adele vanishes");
  adele_opt(zero_set_cmd);
  zero_set_cmd->callback([&] {
    action = [&] {
      Adele a = json_io::adele_from(inputs.load(adele_text));
      return json{{"zero_set", json_io::to_json(on_adele(a, [](const auto& x) { return zero_set(x); }))}};
    };
  });

  auto* abs_cmd = app.add_subcommand("abs", "Adelic absolute value of a full adele");
  adele_opt(abs_cmd);
  abs_cmd->callback([&] {
    action = [&] {
      return json{{"abs", json_io::to_json(absolute_value(json_io::full_adele_from(inputs.load(adele_text))))}};
    };
  });

  auto* factor_cmd = app.add_subcommand("factor", "Factor an invertible full adele as r * u");
  adele_opt(factor_cmd);
  factor_cmd->callback([&] {
    action = [&] {
      IdeleFactorization f = factor_idele(json_io::full_adele_from(inputs.load(adele_text)));
      return json{{"r", json_io::to_json(f.r)}, {"u", json_io::to_json(f.u)}};
    };
  });

  auto* isotropy_cmd = app.add_subcommand("isotropy", "Isotropy group of an adele");
  adele_opt(isotropy_cmd);
  isotropy_cmd->callback([&] {
    action = [&] {
      Adele a = json_io::adele_from(inputs.load(adele_text));
      IsotropyTag t = on_adele(a, [](const auto& x) { return isotropy(x); });
      return json{{"isotropy", t == IsotropyTag::FullGroup ? "full_group" : "trivial"}};
    };
  });

  auto* closure_cmd = app.add_subcommand("orbit-closure", "Is right in the orbit closure of left?");
  pair_opts(closure_cmd, "adele");
  closure_cmd->callback([&] {
    action = [&] {
      Adele a = json_io::adele_from(inputs.load(left_text));
      Adele b = json_io::adele_from(inputs.load(right_text));
      return on_pair(a, b, [](const auto& x, const auto& y) {
        return json{{"contains", orbit_closure_contains(x, y)}};
      });
    };
  });

  auto* quasi_cmd = app.add_subcommand("quasi-orbit", "Do two adeles share a quasi-orbit?");
  pair_opts(quasi_cmd, "adele");
  quasi_cmd->callback([&] {
    action = [&] {
      Adele a = json_io::adele_from(inputs.load(left_text));
      Adele b = json_io::adele_from(inputs.load(right_text));
      return on_pair(a, b, [](const auto& x, const auto& y) { return json{{"same", same_quasi_orbit(x, y)}}; });
    };
  });

  auto* chi_cmd = app.add_subcommand("chi", "Parameter point of a full adele");
  adele_opt(chi_cmd);
  chi_cmd->callback([&] {
    action = [&] { return json{{"chi", json_io::to_json(chi(json_io::full_adele_from(inputs.load(adele_text))))}}; };
  });

  auto* witness_cmd = app.add_subcommand("witness", "Rational r with r * a in the neighbourhood");
  adele_opt(witness_cmd);
  witness_cmd->add_option("--nbhd", nbhd_text, "Neighbourhood (JSON)")->required();
  witness_cmd->add_flag("--division", division, "Report 1/r, the witness for the division action");
  witness_cmd->add_option("--scan-cap", witness_options.scan_cap, "Progression scan cap");
  witness_cmd->add_option("--growth-cap", witness_options.growth_cap, "Denominator growth cap");
  witness_cmd->callback([&] {
    action = [&] {
      Adele a = json_io::adele_from(inputs.load(adele_text));
      Neighbourhood v = json_io::neighbourhood_from(inputs.load(nbhd_text));
      Rational r = on_adele(a, [&](const auto& x) { return approx_witness(x, v, witness_options); });
      return json{{"r", json_io::to_json(division ? Rational(1 / r) : r)}, {"verified", true}};
    };
  });

  auto* exact_cmd = app.add_subcommand("exact-witness", "The r with r * left == right, if any");
  pair_opts(exact_cmd, "adele");
  exact_cmd->callback([&] {
    action = [&] {
      Adele a = json_io::adele_from(inputs.load(left_text));
      Adele b = json_io::adele_from(inputs.load(right_text));
      return on_pair(a, b, [](const auto& x, const auto& y) {
        std::optional<Rational> r = exact_orbit_witness(x, y);
        return json{{"r", r ? json_io::to_json(*r) : json(nullptr)}};
      });
    };
  });

  auto* zd_cmd = app.add_subcommand("zero-divisor", "Is an integral finite adele a zero divisor?");
  adele_opt(zd_cmd);
  zd_cmd->callback([&] {
    action = [&] {
      return json{{"zero_divisor", is_zero_divisor(as_finite(json_io::adele_from(inputs.load(adele_text))))}};
    };
  });

  auto* pc_cmd = app.add_subcommand("pc-closure", "Closure in the power-cofinite topology");
  set_opt(pc_cmd);
  pc_cmd->callback([&] {
    action = [&] {
      SetDescriptor d = json_io::set_descriptor_from(inputs.load(set_text), Space::PowerCofinite);
      json out = closure_document(pc_closure(d));
      out["dense"] = pc_dense(d);
      return out;
    };
  });

  auto* tau_cmd = app.add_subcommand("tau-closure", "Closure in the tau topology");
  set_opt(tau_cmd);
  tau_cmd->callback([&] {
    action = [&] {
      return closure_document(tau_closure(json_io::set_descriptor_from(inputs.load(set_text), Space::Tau)));
    };
  });

  auto* spec_cmd = app.add_subcommand("specializes", "Is right in the tau closure of left?");
  pair_opts(spec_cmd, "parameter point");
  spec_cmd->callback([&] {
    action = [&] {
      ParameterPoint x = json_io::parameter_point_from(inputs.load(left_text));
      ParameterPoint y = json_io::parameter_point_from(inputs.load(right_text));
      return json{{"specializes", point_specializes(x, y)}};
    };
  });

  auto* primcq_cmd = app.add_subcommand("primcq-closure", "Closure in the primitive spectrum for Q^*_+");
  set_opt(primcq_cmd);
  primcq_cmd->callback([&] {
    action = [&] {
      return closure_document(primcq_closure(json_io::set_descriptor_from(inputs.load(set_text), Space::PrimCQ)));
    };
  });

  auto* primfull_cmd = app.add_subcommand("primfull-closure", "Closure in the primitive spectrum for Q^*");
  set_opt(primfull_cmd);
  primfull_cmd->callback([&] {
    action = [&] {
      return closure_document(
          prim_full_closure(json_io::set_descriptor_from(inputs.load(set_text), Space::PrimFull)));
    };
  });

  auto* prim_eq_cmd = app.add_subcommand("prim-equal", "Do two (S, character) pairs give the same point?");
  pair_opts(prim_eq_cmd, "point");
  prim_eq_cmd->callback([&] {
    action = [&] {
      PrimPoint x = json_io::prim_point_from(inputs.load(left_text));
      PrimPoint y = json_io::prim_point_from(inputs.load(right_text));
      return json{{"equal", prim_equal(x, y)}};
    };
  });

  auto* eval_cmd = app.add_subcommand("char-eval", "Angle of a character at a rational");
  eval_cmd->add_option("--character", character_text, "Character (JSON)")->required();
  eval_cmd->add_option("--r", r_text, "Nonzero rational")->required();
  eval_cmd->callback([&] {
    action = [&] {
      Character c = json_io::character_from(inputs.load(character_text));
      return json{{"angle", json_io::to_json(character_eval(c, parse_rational(r_text)))}};
    };
  });

  auto* oracle_cmd = app.add_subcommand("oracle-witness", "Bounded exhaustive search for a witness");
  adele_opt(oracle_cmd);
  oracle_cmd->add_option("--nbhd", nbhd_text, "Neighbourhood (JSON)")->required();
  oracle_cmd->add_option("--height", budget.height_bound, "Height bound");
  oracle_cmd->add_option("--window", window_budget_text, "Denominator primes (JSON array)");
  oracle_cmd->add_option("--precision", budget.precision, "Ball radius bound");
  oracle_cmd->add_flag("--division", division, "Report 1/r");
  oracle_cmd->callback([&] {
    action = [&] {
      Adele a = json_io::adele_from(inputs.load(adele_text));
      Neighbourhood v = json_io::neighbourhood_from(inputs.load(nbhd_text));
      if (!window_budget_text.empty()) budget.prime_window = window_primes(inputs.load(window_budget_text));
      std::optional<Rational> r = witness_by_search(a, v, budget);
      if (!r) return json{{"r", nullptr}};
      return json{{"r", json_io::to_json(division ? Rational(1 / *r) : *r)}, {"verified", true}};
    };
  });

  auto* window_cmd = app.add_subcommand("oracle-window", "Power-cofinite closure by enumeration on a window");
  window_cmd->add_option("--points", points_text, "Prime sets (JSON array)")->required();
  window_cmd->add_option("--window", window_text, "Places (JSON array)")->required();
  window_cmd->callback([&] {
    action = [&] {
      json pts = inputs.load(points_text);
      if (!pts.is_array()) fail(ErrorCode::ParseError, "points must be an array of prime sets");
      std::vector<PrimeSet> points;
      for (const json& s : pts) points.push_back(json_io::prime_set_from(s));
      json sets = json::array();
      for (const PrimeSet& s : window_closure(points, window_places(inputs.load(window_text)))) {
        sets.push_back(json_io::to_json(s));
      }
      return json{{"closure", sets}};
    };
  });

  auto emit = [&](const json& doc) { out << (pretty ? doc.dump(2) : doc.dump()) << '\n'; };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit(error_document("ParseError", e.what()));
    return 1;
  }

  try {
    emit(action());
    return 0;
  } catch (const Error& e) {
    emit(error_document(to_string(e.code()), e.what()));
    return is_domain_error(e.code()) ? 2 : 1;
  } catch (const json::exception& e) {
    emit(error_document("ParseError", e.what()));
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace adelic::cli
