#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "dpcoh/cohomology.hpp"
#include "dpcoh/conic.hpp"
#include "dpcoh/picard.hpp"
#include "dpcoh/records.hpp"
#include "dpcoh/tables.hpp"

namespace {

using nlohmann::json;
using namespace dpcoh;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::string format = "text";
  int jobs = 0;
};

struct SearchOptions {
  std::string mode;
  std::int64_t budget = 50000;
  std::int64_t max_draws = 5'000'000;
  std::uint64_t seed = 1;
  std::string cache = ".dpcoh-cache/";
  bool no_cache = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "exhaustive or random (default: exhaustive for degree >= 2)")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    cmd->add_option("--budget", budget, "random mode: stop after this many draws without a new class")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-draws", max_draws, "random mode: hard cap on draws")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "random mode seed");
    cmd->add_option("--cache", cache, "class cache directory or file");
    cmd->add_flag("--no-cache", no_cache, "always recompute");
  }

  SearchBudget budget_for(int degree, int jobs) const {
    SearchBudget b;
    b.mode = mode.empty() ? (degree == 1 ? SearchMode::Random : SearchMode::Exhaustive) : parse_search_mode(mode);
    b.window = budget;
    b.max_draws = max_draws;
    b.seed = seed;
    b.jobs = jobs;
    return b;
  }

  ClassDatabase load(int degree, int jobs) const {
    return cached_enumerate(degree, budget_for(degree, jobs), no_cache ? std::filesystem::path() : std::filesystem::path(cache));
  }
};

void emit(const Globals& g, const json& report) {
  if (g.format == "json") {
    std::cout << report.dump(2) << '\n';
    return;
  }
  const auto leaves = flatten_report(report);
  if (leaves.size() == 1)
    std::cout << leaves.front().second << '\n';
  else
    std::cout << render_text(report);
}

std::filesystem::path default_table(int degree) {
  static const std::map<int, std::string> files = {
      {1, "urabe-t2.json"}, {2, "urabe-t1-published.json"}, {3, "bfl-7.1.json"}};
  const auto it = files.find(degree);
  if (it == files.end()) return {};
  return std::filesystem::path(DPCOH_DATA_DIR) / "tables" / it->second;
}

std::string weyl_type(int degree) {
  static const std::map<int, std::string> names = {{1, "E8"}, {2, "E7"}, {3, "E6"}, {4, "D5"},
                                                    {5, "A4"}, {6, "A2xA1"}};
  const auto it = names.find(degree);
  return it == names.end() ? "" : it->second;
}

json conic_json(const ConicConfig& c) {
  json points = json::array();
  for (const auto& p : c.points)
    points.push_back({{"degree", p.degree}, {"norm", p.norm}, {"residue_trivial", p.residue_trivial}});
  return {{"character_dim", c.character_dim},
          {"quasi_finite", c.quasi_finite},
          {"relatively_minimal", c.relatively_minimal},
          {"points", points}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois cohomology of Picard lattices of del Pezzo surfaces"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads (default: available parallelism)")->check(CLI::NonNegativeNumber);

  int degree = 0;
  auto degree_opt = [&](CLI::App* cmd, int lo, int hi) {
    cmd->add_option("--degree", degree, "degree of the del Pezzo surface")->required()->check(CLI::Range(lo, hi));
  };

  auto* lattice = app.add_subcommand("lattice", "Picard lattice data");
  lattice->require_subcommand(1);
  auto* lattice_info = lattice->add_subcommand("info", "counts of (-1)-classes and roots");
  degree_opt(lattice_info, 1, 7);

  SearchOptions search;
  auto* classes = app.add_subcommand("classes", "conjugacy classes of the Weyl group");
  classes->require_subcommand(1);
  auto* classes_enum = classes->add_subcommand("enumerate", "enumerate classes with their invariants");
  degree_opt(classes_enum, 1, 6);
  search.add_to(classes_enum);

  std::string class_id;
  bool tower = false;
  auto* h1 = app.add_subcommand("h1", "H^1 of the cyclic group generated by a class");
  degree_opt(h1, 1, 6);
  h1->add_option("--class-id", class_id, "class id, e.g. d3-006")->required();
  h1->add_flag("--tower", tower, "every level g^r for r dividing the order");
  search.add_to(h1);

  std::string symbol;
  int r = 1;
  auto* frame = app.add_subcommand("frame", "Frame symbols");
  frame->require_subcommand(1);
  auto* frame_power = frame->add_subcommand("power", "Frame symbol of g^r");
  auto* chr = app.add_subcommand("char", "characteristic symbols");
  chr->require_subcommand(1);
  auto* char_power = chr->add_subcommand("power", "characteristic symbol of g^r");
  for (auto* cmd : {frame_power, char_power}) {
    cmd->add_option("--symbol", symbol, "symbol, e.g. 1^-4.2^6")->required();
    cmd->add_option("--r", r, "power")->required()->check(CLI::PositiveNumber);
  }

  std::string config_path;
  int e = 1;
  auto* conic = app.add_subcommand("conic", "conic bundles over the projective line");
  conic->require_subcommand(1);
  auto* conic_h1 = conic->add_subcommand("h1", "H^1 of the Picard module");
  auto* conic_bc = conic->add_subcommand("base-change", "configuration after an extension of degree e");
  for (auto* cmd : {conic_h1, conic_bc}) cmd->add_option("--config", config_path, "configuration file")->required();
  conic_bc->add_option("--e", e, "extension degree")->required()->check(CLI::PositiveNumber);

  std::string table_path;
  auto* verify = app.add_subcommand("verify", "verification runs");
  verify->require_subcommand(1);
  auto* verify_thm = verify->add_subcommand("theorem", "every minimal class has some g^r with H^1 != 0");
  degree_opt(verify_thm, 1, 4);
  verify_thm->add_option("--tables", table_path, "table file whose entries must be realized");
  search.add_to(verify_thm);

  std::string script_path;
  auto* replay = app.add_subcommand("replay", "replay scripted descent steps");
  replay->require_subcommand(1);
  auto* replay_steps = replay->add_subcommand("steps", "replay a descent script");
  replay_steps->add_option("--file", script_path, "descent script")->required()->check(CLI::ExistingFile);
  search.add_to(replay_steps);

  auto* audit = app.add_subcommand("audit", "compare a table transcription with the computed classes");
  audit->add_option("--tables", table_path, "table file")->required()->check(CLI::ExistingFile);
  search.add_to(audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const int jobs = g.jobs > 0 ? g.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  try {
    if (*lattice_info) {
      const PicardLattice lat = PicardLattice::build(degree);
      emit(g, {{"degree", degree},
               {"rank", lat.rank()},
               {"canonical", lat.canonical().to_string()},
               {"minus_one_classes", minus_one_classes(lat).size()},
               {"roots", roots(lat).size()},
               {"weyl_type", weyl_type(degree)}});
      return kExitOk;
    }
    if (*classes_enum) {
      emit(g, to_json(search.load(degree, jobs)));
      return kExitOk;
    }
    if (*h1) {
      const ClassDatabase db = search.load(degree, jobs);
      const ClassRecord& c = db.by_id(class_id);
      if (!tower) {
        emit(g, {{"h1", c.h1().to_string()}});
      } else {
        json levels = json::object();
        for (const auto& [k, grp] : c.h1_tower) levels[std::to_string(k)] = grp.to_string();
        const auto first = c.first_nonvanishing_power();
        emit(g, {{"class", c.id}, {"order", c.order}, {"tower", levels},
                 {"first_nonvanishing_power", first ? json(*first) : json(nullptr)}});
      }
      return kExitOk;
    }
    if (*frame_power) {
      emit(g, {{"symbol", format_symbol(power_frame(parse_frame_symbol(symbol), r))}});
      return kExitOk;
    }
    if (*char_power) {
      emit(g, {{"symbol", format_symbol(power_char(parse_char_symbol(symbol), r))}});
      return kExitOk;
    }
    if (*conic_h1) {
      const ConicConfig c = load_conic_config(config_path);
      const ConicReport rep = analyze(c);
      if (!rep.validation.ok()) {
        std::cerr << "dpcoh: " << to_string(rep.validation.violation) << ": " << rep.validation.message << '\n';
        return kExitFail;
      }
      if (rep.rational_range_warning)
        std::cerr << "dpcoh: warning: " << rep.geometric_fibres << " geometric singular fibres\n";
      emit(g, {{"h1", rep.h1->to_string()}});
      return kExitOk;
    }
    if (*conic_bc) {
      const ConicConfig c = base_change(load_conic_config(config_path), e);
      json out = conic_json(c);
      out["e"] = e;
      const ValidationResult v = validate(c);
      out["validation"] = to_string(v.violation);
      out["h1"] = v.ok() ? json(h1_pic(c).to_string()) : json(nullptr);
      emit(g, out);
      return kExitOk;
    }
    if (*verify_thm) {
      const ClassDatabase db = search.load(degree, jobs);
      std::vector<TableEntry> table;
      const std::filesystem::path tp = table_path.empty() ? default_table(degree) : std::filesystem::path(table_path);
      if (!tp.empty()) table = load_tables(tp);
      const TheoremReport rep = verify_theorem(degree, db.classes, db.heuristic, tp.empty() ? nullptr : &table);
      emit(g, to_json(rep));
      return rep.pass() ? kExitOk : kExitFail;
    }
    if (*replay_steps) {
      const DescentScript script = load_descent_script(script_path);
      std::map<int, ClassDatabase> dbs;
      auto provider = [&](int d) -> const std::vector<ClassRecord>& {
        auto it = dbs.find(d);
        if (it == dbs.end()) it = dbs.emplace(d, search.load(d, jobs)).first;
        return it->second.classes;
      };
      const auto steps = replay_script(script, std::filesystem::path(script_path).parent_path(), provider);
      json list = json::array();
      std::size_t failed = 0;
      for (const auto& s : steps) {
        list.push_back(to_json(s));
        if (!s.ok()) ++failed;
      }
      emit(g, {{"kind", "descent-replay"}, {"steps", list}, {"failed", failed}});
      return failed == 0 ? kExitOk : kExitFail;
    }
    if (*audit) {
      const TableFile t = load_table_file(table_path);
      if (t.degree < 1 || t.degree > 6) throw std::invalid_argument("table file has no usable degree");
      const ClassDatabase db = search.load(t.degree, jobs);
      const auto ds = audit_tables(t, db.classes);
      json rep = to_json(ds);
      rep["table"] = t.table;
      rep["variant"] = t.variant;
      emit(g, rep);
      return ds.empty() ? kExitOk : kExitFail;
    }
  } catch (const ParseError& err) {
    std::cerr << "dpcoh: parse error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const ConfigParseError& err) {
    std::cerr << "dpcoh: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "dpcoh: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& err) {
    std::cerr << "dpcoh: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "dpcoh: " << err.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
