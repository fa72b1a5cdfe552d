#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cag/agreement.hpp"
#include "cag/ball.hpp"
#include "cag/cellular_automaton.hpp"
#include "cag/errors.hpp"
#include "cag/group_algebra.hpp"
#include "cag/linear_ca.hpp"
#include "cag/marked_group.hpp"
#include "cag/resource.hpp"
#include "cag/shift_space.hpp"
#include "cag/subshift.hpp"
#include "cag/surjunctivity.hpp"
#include "cag/window.hpp"

namespace cag {

namespace {

MarkedGroup parse_group(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ParseError("group spec needs the form kind:value, got '" + spec +
                     "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string value = spec.substr(colon + 1);
  auto as_number = [&]() -> std::uint64_t {
    try {
      return std::stoull(value);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + value + "' in group spec");
    }
  };
  if (kind == "cyclic") {
    return MarkedGroup::cyclic(as_number());
  }
  if (kind == "zd") {
    return MarkedGroup::zd(static_cast<int>(as_number()));
  }
  if (kind == "free") {
    return MarkedGroup::free_group(static_cast<int>(as_number()));
  }
  if (kind == "finite") {
    std::ifstream in(value);
    if (!in) {
      throw ParseError("cannot open group file '" + value + "'");
    }
    return MarkedGroup::load(in);
  }
  throw ParseError("unknown group kind '" + kind + "'");
}

CellularAutomaton parse_rule(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ParseError("rule spec needs the form eca:<code> or file:<path>");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string value = spec.substr(colon + 1);
  if (kind == "eca") {
    int code;
    try {
      code = std::stoi(value);
    } catch (const std::exception&) {
      throw ParseError("bad elementary rule code '" + value + "'");
    }
    if (code < 0 || code > 255) {
      throw ParseError("elementary rule code must be in 0..255");
    }
    return CellularAutomaton::eca(code);
  }
  if (kind == "file") {
    std::ifstream in(value);
    if (!in) {
      throw ParseError("cannot open rule file '" + value + "'");
    }
    return CellularAutomaton::load(in);
  }
  throw ParseError("unknown rule kind '" + kind + "'");
}

LinearKernel parse_kernel(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || spec.substr(0, colon) != "file") {
    throw ParseError("kernel spec needs the form file:<path>");
  }
  const std::string path = spec.substr(colon + 1);
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open kernel file '" + path + "'");
  }
  return LinearKernel::load(in);
}

YSpec parse_subshift(const std::string& spec, int alphabet) {
  if (spec == "full") {
    return YSpec::full_shift(alphabet);
  }
  if (spec.starts_with("fix:")) {
    int period;
    try {
      period = std::stoi(spec.substr(4));
    } catch (const std::exception&) {
      throw ParseError("bad period in subshift spec '" + spec + "'");
    }
    return YSpec::fix(period, alphabet);
  }
  throw ParseError("subshift spec must be 'full' or 'fix:<n>'");
}

std::string radius_text(const AgreementRadius& r) {
  if (r.is_exact()) {
    return std::to_string(r.radius);
  }
  return "at least " + std::to_string(r.radius);
}

nlohmann::json radius_json(const AgreementRadius& r) {
  nlohmann::json j;
  j["kind"] = r.is_exact() ? "exactly" : "at_least";
  j["radius"] = r.radius;
  j["displayed_distance"] = r.displayed_distance();
  return j;
}

void write_text_or_file(const std::string& text, const std::string& path,
                        std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) {
    throw ParseError("cannot open output file '" + path + "'");
  }
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  if (const char* cap = std::getenv("CAG_RESOURCE_CAP")) {
    try {
      global_limits().max_items = std::stoull(cap);
    } catch (const std::exception&) {
      err << "bad CAG_RESOURCE_CAP value '" << cap << "'\n";
      return 2;
    }
  } else {
    global_limits().max_items = ResourceLimits{}.max_items;
  }

  CLI::App app{"cellular automata over marked groups"};
  app.require_subcommand(1);

  std::string group1, group2, group_spec, rule_spec, rule2_spec, kernel_spec;
  std::string config_csv, subshift_spec, format = "table", dump_path, out_path;
  std::string matrix_m_path, matrix_l_path, side = "left", sequence_spec;
  int rmax = 8, radius = 2, alphabet = 2, period = 0, bound = 2;
  int max_period = 8, cap = 8, fill = 0;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format)
        ->check(CLI::IsMember({"table", "json"}));
  };

  auto* marked = app.add_subcommand("marked-dist",
                                    "agreement radius of two marked groups");
  marked->add_option("--group1", group1)->required();
  marked->add_option("--group2", group2)->required();
  marked->add_option("--rmax", rmax);
  add_format(marked);

  auto* fixw = app.add_subcommand("fix-window", "window projection of Fix(N)");
  fixw->add_option("--group", group_spec)->required();
  fixw->add_option("--alphabet", alphabet);
  fixw->add_option("--radius", radius);
  fixw->add_option("--dump", dump_path);
  add_format(fixw);

  auto* hb = app.add_subcommand(
      "hb-dist", "Hausdorff-Bourbaki agreement radius of two Fix(N)");
  hb->add_option("--group1", group1)->required();
  hb->add_option("--group2", group2)->required();
  hb->add_option("--alphabet", alphabet);
  hb->add_option("--rmax", rmax);
  add_format(hb);

  auto* capply = app.add_subcommand("ca-apply", "apply a rule once");
  capply->add_option("--rule", rule_spec)->required();
  capply->add_option("--config", config_csv)->required();
  capply->add_option("--period", period);
  capply->add_option("--group", group_spec);

  auto* ccompose = app.add_subcommand("ca-compose", "compose two rules");
  ccompose->add_option("--rule1", rule_spec)->required();
  ccompose->add_option("--rule2", rule2_spec)->required();
  ccompose->add_option("--out", out_path);

  auto* csynth = app.add_subcommand(
      "ca-synthesize", "recover a rule from its action on Z/n");
  csynth->add_option("--rule", rule_spec)->required();
  csynth->add_option("--period", period)->required();
  csynth->add_option("--bound", bound);
  csynth->add_option("--fill", fill);
  csynth->add_option("--out", out_path);

  auto* ldecide = app.add_subcommand(
      "lin-decide", "injectivity/surjectivity of a linear kernel");
  ldecide->add_option("--kernel", kernel_spec)->required();
  ldecide->add_option("--group", group_spec)->required();
  add_format(ldecide);

  auto* linverse = app.add_subcommand("lin-inverse",
                                      "inverse kernel over a finite quotient");
  linverse->add_option("--kernel", kernel_spec)->required();
  linverse->add_option("--group", group_spec)->required();
  linverse->add_option("--out", out_path);

  auto* stable = app.add_subcommand(
      "stable-finite", "two-sidedness of a one-sided inverse over F_p[G]");
  stable->add_option("--group", group_spec)->required();
  stable->add_option("--m", matrix_m_path)->required();
  stable->add_option("--l", matrix_l_path)->required();
  stable->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  auto* surj = app.add_subcommand("surj-1d", "exact surjectivity over Z");
  surj->add_option("--rule", rule_spec)->required();

  auto* inj = app.add_subcommand("inj-1d", "exact injectivity over Z");
  inj->add_option("--rule", rule_spec)->required();

  auto* gromov = app.add_subcommand("gromov-radius",
                                    "injectivity-transfer entourage radius");
  gromov->add_option("--rule", rule_spec)->required();
  gromov->add_option("--subshift", subshift_spec)->required();
  gromov->add_option("--cap", cap);
  add_format(gromov);

  auto* transfer = app.add_subcommand("transfer-check",
                                      "injectivity transfer report");
  transfer->add_option("--rule", rule_spec)->required();
  transfer->add_option("--subshift", subshift_spec)->required();
  transfer->add_option("--max-period", max_period);
  transfer->add_option("--cap", cap);
  add_format(transfer);

  auto* converge = app.add_subcommand("converge",
                                      "five-stage convergence experiment");
  converge->add_option("--sequence", sequence_spec)->required();
  converge->add_option("--limit", group2)->required();
  converge->add_option("--rule", rule_spec);
  converge->add_option("--kernel", kernel_spec);
  converge->add_option("--rmax", rmax);
  add_format(converge);

  std::vector<const char*> argv;
  argv.push_back("cag");
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }

  try {
    try {
      app.parse(static_cast<int>(argv.size()),
                const_cast<char**>(argv.data()));
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << e.what() << "\n";
      return 2;
    }

    if (marked->parsed()) {
      const AgreementRadius r =
          marked_distance(parse_group(group1), parse_group(group2), rmax);
      if (format == "json") {
        out << radius_json(r).dump(2) << "\n";
      } else {
        out << "agreement radius: " << radius_text(r) << "\n";
      }
      return 0;
    }

    if (fixw->parsed()) {
      const MarkedGroup g = parse_group(group_spec);
      const WindowSet set = fix_window(g, alphabet, radius);
      const std::size_t classes = coset_classes(g, radius).size();
      if (format == "json") {
        nlohmann::json j;
        j["group"] = g.describe();
        j["radius"] = radius;
        j["alphabet"] = alphabet;
        j["coset_classes"] = classes;
        j["patterns"] = set.size();
        out << j.dump(2) << "\n";
      } else {
        out << "coset classes: " << classes << "\n";
        out << "patterns: " << set.size() << "\n";
      }
      if (!dump_path.empty()) {
        std::ostringstream csv;
        dump_window_csv(csv, set);
        write_text_or_file(csv.str(), dump_path, out);
      }
      return 0;
    }

    if (hb->parsed()) {
      const FixSubshift y(parse_group(group1), alphabet);
      const FixSubshift z(parse_group(group2), alphabet);
      const AgreementRadius r = hb_agreement_radius(y, z, rmax);
      if (format == "json") {
        out << radius_json(r).dump(2) << "\n";
      } else {
        out << "agreement radius: " << radius_text(r) << "\n";
      }
      return 0;
    }

    if (capply->parsed()) {
      const CellularAutomaton tau = parse_rule(rule_spec);
      if (!group_spec.empty()) {
        const MarkedGroup g = parse_group(group_spec);
        PeriodicConfiguration parsed =
            PeriodicConfiguration::parse(config_csv, tau.alphabet());
        FiniteConfiguration x{g, tau.alphabet(), parsed.values};
        if (x.values.size() != g.order()) {
          throw std::invalid_argument(
              "configuration length must equal the group order");
        }
        const FiniteConfiguration image = tau.apply(x);
        PeriodicConfiguration render{tau.alphabet(), image.values};
        out << render.str() << "\n";
      } else {
        PeriodicConfiguration x =
            PeriodicConfiguration::parse(config_csv, tau.alphabet());
        if (period > 0 && period != x.period()) {
          throw std::invalid_argument(
              "--period disagrees with the configuration length");
        }
        out << tau.apply(x).str() << "\n";
      }
      return 0;
    }

    if (ccompose->parsed()) {
      const CellularAutomaton composed =
          ca_compose(parse_rule(rule_spec), parse_rule(rule2_spec));
      std::ostringstream text;
      composed.save(text);
      write_text_or_file(text.str(), out_path, out);
      return 0;
    }

    if (csynth->parsed()) {
      const CellularAutomaton tau = parse_rule(rule_spec);
      const CellularAutomaton recovered = synthesize_from_periodic_map(
          tau.alphabet(), period,
          [&](const PeriodicConfiguration& x) { return tau.apply(x); }, bound,
          static_cast<std::uint8_t>(fill));
      std::ostringstream text;
      recovered.save(text);
      write_text_or_file(text.str(), out_path, out);
      return 0;
    }

    if (ldecide->parsed()) {
      const LinearKernel kernel = parse_kernel(kernel_spec);
      const MarkedGroup g = parse_group(group_spec);
      const LinDecision d = lin_decide(kernel, g);
      if (format == "json") {
        nlohmann::json j;
        j["rank"] = d.rank;
        j["size"] = d.size;
        j["injective"] = d.injective;
        j["surjective"] = d.surjective;
        j["bijective"] = d.bijective();
        out << j.dump(2) << "\n";
      } else {
        out << "rank: " << d.rank << "/" << d.size << "\n";
        out << "verdict: "
            << (d.bijective() ? "bijective"
                              : "non-injective and non-surjective")
            << "\n";
      }
      return 0;
    }

    if (linverse->parsed()) {
      const LinearKernel inverse =
          lin_inverse_kernel(parse_kernel(kernel_spec), parse_group(group_spec));
      std::ostringstream text;
      inverse.save(text);
      write_text_or_file(text.str(), out_path, out);
      return 0;
    }

    if (stable->parsed()) {
      const MarkedGroup g = parse_group(group_spec);
      auto load_matrix = [&](const std::string& path) {
        std::ifstream in(path);
        if (!in) {
          throw ParseError("cannot open algebra matrix file '" + path + "'");
        }
        return GroupAlgebraMatrix::load(in, g);
      };
      const GroupAlgebraMatrix m = load_matrix(matrix_m_path);
      const GroupAlgebraMatrix l = load_matrix(matrix_l_path);
      const StableFinitenessResult result = stable_finiteness_witness(
          g, m, l, side == "left" ? InverseSide::Left : InverseSide::Right);
      out << "two-sided: " << (result.confirmed ? "confirmed" : "REFUTED")
          << "\n";
      return result.confirmed ? 0 : 1;
    }

    if (surj->parsed()) {
      out << "surjective: "
          << (is_surjective_1d(parse_rule(rule_spec)) ? "true" : "false")
          << "\n";
      return 0;
    }

    if (inj->parsed()) {
      out << "injective: "
          << (is_injective_1d(parse_rule(rule_spec)) ? "true" : "false")
          << "\n";
      return 0;
    }

    if (gromov->parsed()) {
      const CellularAutomaton tau = parse_rule(rule_spec);
      const YSpec y = parse_subshift(subshift_spec, tau.alphabet());
      const auto profile = modulus_profile(tau, y, cap);
      if (!profile) {
        throw std::invalid_argument(
            "restriction is not an embedding within the search cap");
      }
      const int v = gromov_radius(*profile);
      if (format == "json") {
        nlohmann::json j;
        j["memory_radius"] = profile->memory_radius;
        j["embedding_radius"] = profile->embedding_radius;
        j["expansivity_radius"] = ModulusProfile::expansivity_radius;
        j["transfer_radius"] = v;
        out << j.dump(2) << "\n";
      } else {
        out << "memory radius: " << profile->memory_radius << "\n";
        out << "embedding radius: " << profile->embedding_radius << "\n";
        out << "transfer radius: " << v << "\n";
      }
      return 0;
    }

    if (transfer->parsed()) {
      const CellularAutomaton tau = parse_rule(rule_spec);
      const YSpec y = parse_subshift(subshift_spec, tau.alphabet());
      const TransferReport report =
          injectivity_transfer_check(tau, y, max_period, cap);
      out << (format == "json" ? report.to_json() + "\n" : report.to_table());
      return 0;
    }

    if (converge->parsed()) {
      std::vector<MarkedGroup> sequence;
      std::stringstream ss(sequence_spec);
      std::string item;
      while (std::getline(ss, item, ',')) {
        sequence.push_back(parse_group(item));
      }
      const MarkedGroup limit = parse_group(group2);
      if (rule_spec.empty() == kernel_spec.empty()) {
        throw ParseError("converge needs exactly one of --rule or --kernel");
      }
      std::optional<LinearKernel> kernel;
      std::optional<CellularAutomaton> tau;
      if (!kernel_spec.empty()) {
        kernel = parse_kernel(kernel_spec);
        tau = kernel_to_ca(*kernel);
      } else {
        tau = parse_rule(rule_spec);
      }
      ConvergenceReport report = convergence_experiment(
          sequence, limit, *tau, rmax, kernel ? &*kernel : nullptr);
      report.rule = rule_spec.empty() ? kernel_spec : rule_spec;
      out << (format == "json" ? report.to_json() + "\n" : report.to_table());
      return report.all_passed() || report.downgraded ? 0 : 1;
    }

    err << "no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cag
