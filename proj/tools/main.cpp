#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <atomic>
#include <iostream>
#include <set>
#include <thread>

#include "isotropic/interpret.hpp"
#include "isotropic/verify.hpp"

using json = nlohmann::ordered_json;
using namespace iso;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

json matrix_json(const FiniteRing& k, const RMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(k.to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json result_json(const FiniteRing& k, const VerificationResult& r) {
  json j;
  j["theorem"] = r.theorem;
  j["index"] = r.index;
  j["ring"] = r.ring;
  j["instance"] = r.instance;
  j["mode"] = mode_name(r.mode);
  j["outcome"] = outcome_name(r.outcome);
  json c = json::object();
  for (const auto& [name, v] : r.counts) c[name] = v;
  j["counts"] = c;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.counterexample) j["counterexample"] = matrix_json(k, *r.counterexample);
  return j;
}

json record_json(const TableRecord& r) {
  json j;
  j["index"] = r.index;
  j["kind"] = r.kind;
  j["relative"] = r.actual_relative;
  j["kernel"] = r.actual_kernel;
  j["fibers"] = r.actual_fibers;
  j["out"] = r.actual_out;
  j["labels"] = r.actual_labels;
  j["expected"] = {{"relative", r.expected_relative}, {"kernel", r.expected_kernel}, {"fibers", r.expected_fibers}};
  if (r.expected_out) j["expected"]["out"] = *r.expected_out;
  if (!r.branch.empty()) j["branch"] = r.branch;
  j["pass"] = r.pass;
  j["out_agrees"] = r.out_agrees;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

int exit_code(const std::vector<Outcome>& v) {
  bool inconclusive = false;
  for (auto o : v) {
    if (o == Outcome::Fail) return kFail;
    if (o == Outcome::Inconclusive) inconclusive = true;
  }
  return inconclusive ? kInconclusive : kPass;
}

void emit(const json& j, const std::string& out, const std::string& table) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw PreconditionError("cannot write " + out);
  f << j.dump(2) << "\n";
  std::cout << table;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s + " ";
}

std::string results_table(const std::vector<VerificationResult>& v) {
  std::string t;
  for (const auto& r : v)
    t += pad(r.theorem, 14) + pad(r.index + " / " + r.ring, 28) + pad(r.instance, 40) + outcome_name(r.outcome) + "\n";
  return t;
}

std::vector<std::string> expand_theorems(const std::string& thm, const Realization& R) {
  if (thm != "all") return {thm};
  std::vector<std::string> out{"gauss", "long-norm", "dbl-centzer", "cent-norm", "urad-cent", "diophantine"};
  if (R.index.classical && R.index.classical->family == "2A" && R.relative->type() == "BC" && R.rank() >= 2)
    out.push_back("cent-us-table");
  return out;
}

struct Task {
  std::string index, ring, theorem;
  std::optional<std::size_t> sampled;
};

/// Runs tasks on a pool; results keep task order.
std::vector<std::vector<VerificationResult>> run_tasks(const std::vector<Task>& tasks, int workers, std::uint64_t seed,
                                                       std::size_t cap) {
  std::vector<std::vector<VerificationResult>> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      const auto& t = tasks[i];
      RunOptions o;
      o.sampled = t.sampled;
      o.seed = seed;
      o.cap = cap;
      try {
        Instance I(realize(t.index, t.ring), o);
        for (const auto& th : expand_theorems(t.theorem, I.R)) {
          auto v = run_theorem(I, th);
          out[i].insert(out[i].end(), v.begin(), v.end());
        }
      } catch (const Error& e) {
        VerificationResult r;
        r.theorem = t.theorem;
        r.index = t.index;
        r.ring = t.ring;
        r.outcome = Outcome::Inconclusive;
        r.detail = e.what();
        out[i].push_back(r);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(1, workers); ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

json index_json(const TitsIndex& idx) {
  auto fm = fold(idx);
  auto rec = check_index(idx);
  json j = record_json(rec);
  j["orbits"] = fm.orbits.size();
  return j;
}

json interpret_json(const Realization& R, int* code) {
  auto kt = build_ktilde(R);
  auto rc = certify_ring_iso(kt);
  json j;
  j["index"] = R.index.name;
  j["ring"] = R.ring.spec();
  j["ktilde_size"] = kt.size();
  j["ring_size"] = R.ring.size();
  j["variables"] = kt.vars.size();
  j["constraints"] = kt.constraints;
  j["search_nodes"] = kt.nodes;
  json fams = json::array();
  for (std::size_t f = 0; f < kt.size(); ++f)
    fams.push_back(kt.scalar[f] < 0 ? std::string("non-scalar") : R.ring.to_string(R.ring.element(kt.scalar[f])));
  j["families_as_scalars"] = fams;
  j["certificate"] = {{"scalar", rc.scalar},         {"bijective", rc.bijective},
                      {"additive", rc.additive},     {"multiplicative", rc.multiplicative},
                      {"commutative", rc.commutative}, {"associative", rc.associative},
                      {"unit", rc.unit},             {"underdetermined", rc.underdetermined}};
  j["pass"] = rc.ok();
  if (!rc.detail.empty()) j["detail"] = rc.detail;
  *code = rc.ok() ? kPass : kFail;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Root systems, Tits indices and finite matrix models of isotropic groups"};
  app.require_subcommand(1);
  std::string out;
  std::string index_name, ring_spec;
  std::size_t sampled = 0, cap = kDefaultCap;
  std::uint64_t seed = 1;
  int workers = 1;

  auto* cidx = app.add_subcommand("index", "fold a Tits index and compare with the tables");
  std::string idx_arg;
  bool verify_all = false;
  cidx->add_option("name", idx_arg, "index name, e.g. E_{7,2}^{31} or 2A(4,2,1)");
  cidx->add_flag("--verify-all", verify_all, "check the exceptional table and the classical grids");
  cidx->add_option("--out", out, "write JSON here");

  auto* cver = app.add_subcommand("verify", "check a statement on a matrix model");
  std::string thm;
  cver->add_option("theorem", thm, "gauss, subgr-int, long-norm, dbl-centzer, cent-norm, urad-cent, diophantine, "
                                   "cent-us-table or all")
      ->required();
  for (auto* c : {cver}) {
    c->add_option("--index", index_name)->required();
    c->add_option("--ring", ring_spec)->required();
    c->add_option("--sampled", sampled, "sampled mode with N random words");
    c->add_option("--seed", seed);
    c->add_option("--cap", cap, "enumeration cap");
    c->add_option("--out", out);
    c->add_option("--workers", workers);
  }

  auto* cint = app.add_subcommand("interpret", "recover the ring from bracket families");
  cint->add_option("--index", index_name)->required();
  cint->add_option("--ring", ring_spec)->required();
  cint->add_option("--out", out);

  auto* creal = app.add_subcommand("realize", "describe a matrix model");
  creal->add_option("--index", index_name)->required();
  creal->add_option("--ring", ring_spec)->required();
  creal->add_option("--out", out);

  auto* csuite = app.add_subcommand("suite", "run a battery of checks");
  std::string profile;
  csuite->add_option("profile", profile, "quick or full")->required()->check(CLI::IsMember({"quick", "full"}));
  csuite->add_option("--workers", workers);
  csuite->add_option("--seed", seed);
  csuite->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*cidx) {
      if (verify_all) {
        json arr = json::array();
        std::size_t ok = 0, exc = 0, exc_ok = 0;
        std::string table;
        auto recs = verify_tables();
        for (const auto& r : recs) {
          arr.push_back(record_json(r));
          ok += r.pass;
          if (r.kind == "exceptional") {
            ++exc;
            exc_ok += r.pass;
          }
          table += pad(r.index, 24) + pad(r.actual_relative, 8) + pad(r.actual_kernel, 20) + (r.pass ? "pass" : "FAIL") + "\n";
        }
        table += std::to_string(exc_ok) + "/" + std::to_string(exc) + " exceptional indices pass, " +
                 std::to_string(ok) + "/" + std::to_string(recs.size()) + " records overall\n";
        json j{{"records", arr}, {"passed", ok}, {"total", recs.size()}};
        emit(j, out, table);
        return ok == recs.size() ? kPass : kFail;
      }
      if (idx_arg.empty()) {
        std::cerr << "index: give a name or --verify-all\n";
        return kUsage;
      }
      auto j = index_json(parse_index(idx_arg));
      emit(j, out, j["index"].get<std::string>() + ": " + j["relative"].get<std::string>() + ", kernel " +
                       j["kernel"].get<std::string>() + "\n");
      return j["pass"].get<bool>() ? kPass : kFail;
    }
    if (*cver) {
      std::set<std::string> known(theorem_names().begin(), theorem_names().end());
      known.insert("all");
      if (!known.count(thm)) {
        std::cerr << "verify: unknown theorem " << thm << "\n";
        return kUsage;
      }
      RunOptions o;
      if (sampled) o.sampled = sampled;
      o.seed = seed;
      o.cap = cap;
      Instance I(realize(index_name, ring_spec), o);
      std::vector<VerificationResult> all;
      for (const auto& th : expand_theorems(thm, I.R)) {
        auto v = run_theorem(I, th);
        all.insert(all.end(), v.begin(), v.end());
      }
      json arr = json::array();
      std::vector<Outcome> oc;
      for (const auto& r : all) {
        arr.push_back(result_json(I.R.ring, r));
        oc.push_back(r.outcome);
      }
      emit(arr, out, results_table(all));
      return exit_code(oc);
    }
    if (*cint) {
      int code = kPass;
      auto j = interpret_json(realize(index_name, ring_spec), &code);
      emit(j, out, std::string("K~ size ") + std::to_string(j["ktilde_size"].get<std::size_t>()) + ", certified " +
                       (j["pass"].get<bool>() ? "yes" : "no") + "\n");
      return code;
    }
    if (*creal) {
      auto R = realize(index_name, ring_spec);
      json roots = json::array();
      for (int a = 0; a < R.relative->size(); ++a)
        roots.push_back({{"root", root_label(*R.relative, a)},
                         {"length", length_name(R.relative->length(a))},
                         {"dim", R.lie_dim(a)},
                         {"subgroup_order", make_set(R.root_subgroup(a)).size()}});
      json j{{"index", R.index.name},         {"ring", R.ring.spec()}, {"group", group_kind_name(R.kind)},
             {"matrix_size", R.N},            {"relative", system_type(*R.relative).str()},
             {"levi_order", R.L_points().size()}, {"roots", roots}};
      emit(j, out, R.index.name + " over " + R.ring.spec() + ": " + group_kind_name(R.kind) + "_" +
                       std::to_string(R.N) + "\n");
      return kPass;
    }
    if (*csuite) {
      std::vector<Task> tasks{{"1A(2,2,1)", "F2", "all", {}}};
      std::vector<std::pair<std::string, std::string>> interp{{"1A(2,2,1)", "Z2"}};
      if (profile == "full") {
        for (auto [i, r] : std::vector<std::pair<std::string, std::string>>{
                 {"1A(2,2,1)", "F3"}, {"1A(2,2,1)", "Z4"}, {"C(2,2,1)", "F2"}, {"C(2,2,1)", "F3"}, {"1A(3,3,1)", "F2"}})
          tasks.push_back({i, r, "all", {}});
        tasks.push_back({"1A(2,2,1)", "Z2xZ3", "gauss", {}});
        tasks.push_back({"2A(4,2,1)", "F2", "all", kDefaultSamples});
        interp = {{"1A(2,2,1)", "Z2"}, {"1A(2,2,1)", "Z3"},    {"1A(2,2,1)", "Z4"}, {"1A(2,2,1)", "Z5"},
                  {"1A(2,2,1)", "Z2xZ3"}, {"1A(5,2,2)", "F2"}, {"C(4,2,2)", "F2"}};
      }
      std::vector<Outcome> oc;
      std::string table;
      auto recs = verify_tables();
      std::size_t ok = 0;
      for (const auto& r : recs) ok += r.pass;
      oc.push_back(ok == recs.size() ? Outcome::Pass : Outcome::Fail);
      table += "tables " + std::to_string(ok) + "/" + std::to_string(recs.size()) + "\n";
      json checks = json::array();
      for (const auto& v : run_tasks(tasks, workers, seed, kDefaultCap))
        for (const auto& r : v) {
          checks.push_back(result_json(FiniteRing::parse(r.ring.empty() ? "Z2" : r.ring), r));
          oc.push_back(r.outcome);
          table += results_table({r});
        }
      json inter = json::array();
      for (auto [i, r] : interp) {
        int code = kPass;
        inter.push_back(interpret_json(realize(i, r), &code));
        oc.push_back(code == kPass ? Outcome::Pass : Outcome::Fail);
        table += pad("interpret", 14) + pad(i + " / " + r, 28) + (code == kPass ? "pass" : "fail") + "\n";
      }
      json j{{"profile", profile},
             {"tables", {{"passed", ok}, {"total", recs.size()}}},
             {"checks", checks},
             {"interpret", inter}};
      emit(j, out, table);
      return exit_code(oc);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kInconclusive;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
