#include "qmoyal/cli.h"

#include <CLI11.hpp>

#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "qmoyal/applications.h"
#include "qmoyal/conformance.h"
#include "qmoyal/errors.h"
#include "qmoyal/parser.h"
#include "qmoyal/report.h"

namespace qmoyal {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kHardFailure = 2;

const std::map<std::string, StarProductId>& product_names() {
  static const std::map<std::string, StarProductId> names = [] {
    std::map<std::string, StarProductId> m;
    for (auto id : all_star_products()) m.emplace(to_string(id), id);
    return m;
  }();
  return names;
}

struct Inputs {
  std::string a;
  std::string b;
  std::string labels_a;
  std::string labels_b;
  std::string check;
  std::string demo;
  std::string rational_a;
  std::string hamiltonian = "p x";
  std::string observable = "x";
  std::string bracket = "poisson";
  int slices = 2;
};

Rational parse_rational(const std::string& s) {
  try {
    Rational r(s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    return r;
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("not a rational number: " + s);
  }
}

// "x,p" label pair for qcomm.
std::pair<int, int> parse_labels(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("labels must be written x,p");
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("labels must be two integers x,p");
  }
}

class Emitter {
 public:
  Emitter(const CliConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void result(const std::string& command, Json fields, const std::string& text) {
    if (cfg_.format == OutputFormat::json) {
      Json j;
      j["command"] = command;
      for (auto& [k, v] : fields.items()) j[k] = v;
      j["result"] = text;
      out_ << j.dump(2) << '\n';
    } else {
      out_ << text << '\n';
    }
  }

  int outcome(const CheckOutcome& o) {
    if (cfg_.format == OutputFormat::json) {
      out_ << to_json(o).dump(2) << '\n';
    } else {
      out_ << to_text(o);
    }
    return o.ok() ? kOk : kHardFailure;
  }

 private:
  const CliConfig& cfg_;
  std::ostream& out_;
};

QContext context(const CliConfig& cfg) { return QContext{cfg.root_denominator, -1}; }

CheckOptions check_options(const CliConfig& cfg) {
  CheckOptions opt;
  opt.grid = cfg.grid;
  opt.ctx = context(cfg);
  opt.truncation = cfg.truncation;
  opt.assoc = cfg.assoc;
  return opt;
}

// Smallest root denominator that is a multiple of D and represents multiples of 1/den.
QContext lifted(const CliConfig& cfg, long den) {
  QContext ctx = context(cfg);
  ctx.root_denominator = static_cast<int>(std::lcm(static_cast<long>(ctx.root_denominator), den));
  return ctx;
}

int run_demo(const CliConfig& cfg, const Inputs& in, Emitter& emit, std::ostream& out) {
  const std::string& name = in.demo;
  if (name == "point-transform") {
    const Rational a = parse_rational(in.rational_a.empty() ? "1/2" : in.rational_a);
    const QContext ctx = lifted(cfg, a.get_den().get_si());
    return emit.outcome(point_transform_bracket_report(a, ctx));
  }
  if (name == "leibniz") return emit.outcome(leibniz_report(context(cfg)));
  if (name == "kinetic") {
    const Rational a = parse_rational(in.rational_a.empty() ? "1/2" : in.rational_a);
    const QContext ctx = lifted(cfg, 2 * a.get_den().get_si());
    return emit.outcome(kinetic_report(a, ctx));
  }
  if (name == "path-integral") {
    const QContext ctx = context(cfg);
    const SymbolPoly h = parse_symbol_expr(in.hamiltonian, ctx);
    if (in.slices < 1) throw CLI::ValidationError("--slices must be at least 1");
    const TruncatedSeries u =
        path_integral_compose(h, in.slices, cfg.truncation, cfg.product, cfg.assoc, ctx);
    Json fields;
    fields["product"] = to_string(cfg.product);
    fields["hamiltonian"] = to_string(h);
    fields["slices"] = in.slices;
    fields["truncation"] = cfg.truncation;
    fields["association"] = to_string(cfg.assoc);
    fields["variable"] = "t' = t/h";
    emit.result("demo path-integral", fields, to_string(u, "t'"));
    return kOk;
  }
  if (name == "evolution") {
    const QContext ctx = context(cfg);
    static const std::map<std::string, BracketFlavor> flavors = {
        {"poisson", BracketFlavor::poisson},
        {"moyal-standard", BracketFlavor::moyal_standard},
        {"moyal-anti", BracketFlavor::moyal_anti}};
    const auto it = flavors.find(in.bracket);
    if (it == flavors.end()) throw CLI::ValidationError("unknown bracket: " + in.bracket);
    const SymbolPoly h = parse_symbol_expr(in.hamiltonian, ctx);
    const SymbolPoly f = parse_symbol_expr(in.observable, ctx);
    Json fields;
    fields["bracket"] = in.bracket;
    fields["hamiltonian"] = to_string(h);
    fields["observable"] = to_string(f);
    emit.result("demo evolution", fields, to_string(tau_q(h, f, it->second, ctx)));
    return kOk;
  }
  out.flush();
  throw CLI::ValidationError("unknown demo: " + name +
                             " (point-transform, leibniz, kinetic, path-integral, evolution)");
}

int run_tabulate(const CliConfig& cfg, std::ostream& out) {
  const int n = cfg.grid;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "a,b,c,d,r,coefficient\n";
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      for (int c = 0; c <= n; ++c) {
        for (int d = 0; d <= n; ++d) {
          for (const auto& [r, coeff] : structure_constants_oracle(cfg.ordering, a, b, c, d)) {
            const std::string s = to_string(coeff);
            csv << a << ',' << b << ',' << c << ',' << d << ',' << r << ',' << s << '\n';
            Json row;
            row["a"] = a;
            row["b"] = b;
            row["c"] = c;
            row["d"] = d;
            row["r"] = r;
            row["coefficient"] = s;
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  if (cfg.format == OutputFormat::json) {
    Json j;
    j["ordering"] = to_string(cfg.ordering);
    j["grid"] = n;
    j["basis"] = cfg.ordering == Ordering::standard ? "X^a P^b" : "P^a X^b";
    j["rows"] = std::move(rows);
    out << j.dump(2) << '\n';
  } else {
    out << csv.str();
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  Inputs in;

  CLI::App app{"Exact q-deformed phase-space quantization", "qmoyal"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--grid", cfg.grid, "Index bound for conformance sweeps")
      ->envname("QMOYAL_GRID")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--allow-large-grid", cfg.allow_large_grid, "Permit --grid above 6");
  app.add_option("--root-denominator", cfg.root_denominator, "q exponents live in (1/D)Z")
      ->check(CLI::PositiveNumber);
  app.add_option("--truncation", cfg.truncation, "Series order K")->check(CLI::NonNegativeNumber);
  app.add_option("--product", cfg.product, "Star product")
      ->transform(CLI::CheckedTransformer(product_names(), CLI::ignore_case));
  app.add_option("--ordering", cfg.ordering, "Operator basis")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Ordering>{{"standard", Ordering::standard},
                                          {"antistandard", Ordering::antistandard}}));
  app.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{
          {"text", OutputFormat::text}, {"json", OutputFormat::json}}));
  app.add_option("--assoc", cfg.assoc, "Bracketing of multi-factor products")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Association>{
          {"left", Association::left}, {"right", Association::right}, {"balanced", Association::balanced}}));

  auto* normal = app.add_subcommand("normal-order", "Normal-order an operator expression");
  normal->add_option("expr", in.a, "Expression in P, X, q, h")->required();

  auto* qcomm = app.add_subcommand("qcomm", "Weighted q-commutator of two operators");
  qcomm->add_option("a", in.a)->required();
  qcomm->add_option("b", in.b)->required();
  qcomm->add_option("--labels-a", in.labels_a, "x,p labels of the first operand");
  qcomm->add_option("--labels-b", in.labels_b, "x,p labels of the second operand");

  auto* star_cmd = app.add_subcommand("star", "Star product of two symbols");
  star_cmd->add_option("f", in.a)->required();
  star_cmd->add_option("g", in.b)->required();

  auto* moyal = app.add_subcommand("moyal", "q-Moyal bracket of two symbols");
  moyal->add_option("f", in.a)->required();
  moyal->add_option("g", in.b)->required();

  auto* poisson = app.add_subcommand("poisson", "q-Poisson bracket of two symbols");
  poisson->add_option("f", in.a)->required();
  poisson->add_option("g", in.b)->required();

  std::vector<std::string> check_names;
  for (const auto& c : conformance_checks()) check_names.push_back(c.name);
  auto* verify = app.add_subcommand("verify", "Run one conformance check");
  verify->add_option("check", in.check)->required()->check(CLI::IsMember(check_names));

  auto* verify_all_cmd = app.add_subcommand("verify-all", "Run every conformance check");

  auto* demo = app.add_subcommand("demo", "Worked applications");
  demo->add_option("name", in.demo, "point-transform, leibniz, kinetic, path-integral, evolution")
      ->required();
  demo->add_option("--a", in.rational_a, "Exponent of the point transformation u = x^a");
  demo->add_option("--hamiltonian", in.hamiltonian, "Hamiltonian symbol");
  demo->add_option("--observable", in.observable, "Observable symbol");
  demo->add_option("--bracket", in.bracket, "poisson, moyal-standard or moyal-anti");
  demo->add_option("--slices", in.slices, "Number of time slices N");

  auto* tabulate = app.add_subcommand("tabulate", "Structure-constant table from the rewrite engine");

  try {
    app.parse(argc, argv);
    if (cfg.grid > CliConfig::max_grid && !cfg.allow_large_grid) {
      throw CLI::ValidationError("--grid above " + std::to_string(CliConfig::max_grid) +
                                 " needs --allow-large-grid");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  Emitter emit(cfg, out);
  const QContext ctx = context(cfg);
  try {
    if (normal->parsed()) {
      const NormalForm nf = normal_order(parse_operator_expr(in.a, ctx), cfg.ordering);
      emit.result("normal-order", {{"ordering", to_string(cfg.ordering)}, {"input", in.a}}, to_string(nf));
    } else if (qcomm->parsed()) {
      auto labeled = [&](const std::string& src, const std::string& labels) {
        const OperatorExpr e = parse_operator_expr(src, ctx);
        if (labels.empty()) return LabeledOperator::homogeneous(e);
        const auto [x, p] = parse_labels(labels);
        return LabeledOperator{e, x, p};
      };
      const LabeledOperator a = labeled(in.a, in.labels_a);
      const LabeledOperator b = labeled(in.b, in.labels_b);
      Json fields = {{"ordering", to_string(cfg.ordering)},
                     {"labels_a", {a.x_label, a.p_label}},
                     {"labels_b", {b.x_label, b.p_label}},
                     {"inputs", {in.a, in.b}}};
      emit.result("qcomm", fields, to_string(q_commutator(a, b, cfg.ordering)));
    } else if (star_cmd->parsed() || moyal->parsed() || poisson->parsed()) {
      const SymbolPoly f = parse_symbol_expr(in.a, ctx);
      const SymbolPoly g = parse_symbol_expr(in.b, ctx);
      Json fields = {{"inputs", {in.a, in.b}}};
      if (poisson->parsed()) {
        emit.result("poisson", fields, to_string(q_poisson_bracket(f, g, ctx)));
      } else {
        fields["product"] = to_string(cfg.product);
        const bool is_star = star_cmd->parsed();
        const SymbolPoly r = is_star ? star(cfg.product, f, g, ctx) : q_moyal_bracket(cfg.product, f, g, ctx);
        emit.result(is_star ? "star" : "moyal", fields, to_string(r));
      }
    } else if (verify->parsed()) {
      return emit.outcome(run_check(in.check, check_options(cfg)));
    } else if (verify_all_cmd->parsed()) {
      return emit.outcome(verify_all(check_options(cfg)));
    } else if (demo->parsed()) {
      return run_demo(cfg, in, emit, out);
    } else if (tabulate->parsed()) {
      return run_tabulate(cfg, out);
    }
  } catch (const ParseError& e) {
    err << "parse error at offset " << e.offset << ": " << e.what() << "; expected one of:";
    for (const auto& x : e.expected) err << ' ' << x;
    err << '\n';
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace qmoyal
