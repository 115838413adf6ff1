// lmat: command-line front end. Exit codes: 0 ok, 1 invariant failure, 2 usage.
#include "lmat/certify.hpp"
#include "lmat/construction.hpp"
#include "lmat/matrix_json.hpp"
#include "lmat/oracle.hpp"
#include "lmat/relation.hpp"
#include "lmat/report.hpp"
#include "lmat/spectral.hpp"
#include "lmat/vanishing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>

using namespace lmat;
using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::string field = "Q";
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string cert = "exact";
  std::vector<std::uint64_t> primes = kDefaultPrimes;
};

void emit(const Globals& g, const json& j) {
  if (g.out.empty()) std::cout << dump_json(j);
  else write_file_atomic(g.out, dump_json(j));
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw UsageError(path + ": " + ex.what());
  }
}

// Accepts an artifact or a bare matrix object.
PaletteMatrix load_matrix(const json& j) {
  return palette_from_json(j.contains("matrix") ? j["matrix"] : j);
}

IntVec parse_relation(const std::string& text) {
  IntVec a;
  for (const auto& s : split_list(text)) {
    try {
      a.push_back(Int(s));
    } catch (const std::exception&) {
      throw UsageError("relation coefficient '" + s + "' is not an integer");
    }
  }
  return a;
}

json int_vec_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
  return a;
}

IntRelation choose_relation(const LSet& l, const std::string& text, bool square) {
  IntRelation rel;
  if (!text.empty()) {
    rel = make_relation(l, parse_relation(text));
  } else {
    auto pr = primitive_relation(l);
    if (!pr.relation) throw UsageError("L = " + l.format() + " has no primitive linear relation");
    rel = *pr.relation;
  }
  if (square && l.all_integer()) rel = normalize_min_negatives(rel, l);
  return rel;
}

json patches_json(const Field& f, const std::vector<Patch>& ps) {
  json a = json::array();
  for (const auto& p : ps) {
    a.push_back({{"beta", f.format(p.beta)}, {"construction", p.construction}, {"q", p.q}, {"rank", p.rank},
                 {"rank_exact", p.rank_exact}, {"blocks", p.blocks}});
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact constructions of low-rank L-matrices"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "Q, GF(p) or Q[t]/(f)");
  app.add_option("--seed", g.seed, "64-bit seed (mt19937_64)");
  app.add_option("--out", g.out, "output file (experiment: directory)");
  app.add_option("--cert", g.cert, "rank certification")->check(CLI::IsMember({"exact", "modular", "bound"}));
  app.add_option("--primes", g.primes, "primes for modular certification")->delimiter(',');

  std::function<int()> action;

  // construct
  auto* construct = app.add_subcommand("construct", "build a matrix and certify its rank");
  std::string cname, lspec, relspec, xs, ys;
  std::uint32_t q = 0;
  std::size_t sub_r = 0, sub_k = 0;
  construct->add_option("name", cname)->required()->check(CLI::IsMember({"square", "threehalves", "fivethirds", "xy3", "subset"}));
  construct->add_option("--L", lspec, "comma-separated elements");
  construct->add_option("--relation", relspec, "comma-separated integers");
  construct->add_option("--q", q, "prime");
  construct->add_option("--x", xs);
  construct->add_option("--y", ys);
  construct->add_option("--r", sub_r);
  construct->add_option("--k", sub_k);
  construct->callback([&] {
    action = [&]() -> int {
      Field f = Field::parse(g.field);
      ConstructionReport rep;
      if (cname == "subset") {
        if (sub_r == 0 || sub_k == 0) throw UsageError("subset needs --r and --k");
        rep = construct_subset_incidence(sub_r, sub_k);
      } else {
        if (q == 0) throw UsageError(cname + " needs --q");
        if (cname == "xy3") {
          if (xs.empty() || ys.empty()) throw UsageError("xy3 needs --x and --y");
          rep = construct_xy3(f, f.parse_elem(xs), f.parse_elem(ys), q);
        } else {
          if (lspec.empty()) throw UsageError(cname + " needs --L");
          LSet l = LSet::parse(f, split_list(lspec));
          IntRelation rel = choose_relation(l, relspec, cname == "square");
          if (cname == "square") rep = construct_square(l, rel, q);
          else if (cname == "threehalves") rep = construct_threehalves(l, rel, q);
          else {
            if (!g.seed) throw UsageError("fivethirds needs --seed");
            rep = construct_fivethirds(l, rel, q, *g.seed);
          }
        }
      }
      auto violations = check_report(rep);
      std::vector<std::string> notices;
      bool within = certify_report(rep, parse_cert_mode(g.cert), g.primes, &notices);
      emit(g, artifact_json(rep));
      std::cerr << rep.name << ": size " << rep.matrix.size() << ", rank_upper " << rep.rank_upper.get_str();
      if (rep.rank_exact) std::cerr << ", rank " << *rep.rank_exact << " (" << rep.rank_method << ")";
      else if (rep.rank_lower) std::cerr << ", rank >= " << *rep.rank_lower << " (" << rep.rank_method << ")";
      std::cerr << "\n";
      for (const auto& n : notices) std::cerr << "note: " << n << "\n";
      for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
      return violations.empty() && within ? 0 : 1;
    };
  });

  // rank
  auto* rankc = app.add_subcommand("rank", "certify the rank of a matrix file");
  std::string matrix_path;
  rankc->add_option("--matrix", matrix_path)->required();
  rankc->callback([&] {
    action = [&]() -> int {
      json j = read_json(matrix_path);
      PaletteMatrix m = load_matrix(j);
      auto cert = certify_rank(m, parse_cert_mode(g.cert), g.primes, j.value("q", 0U), j.value("d", std::size_t{0}));
      json out = {{"size", m.size()}, {"method", cert.method}, {"notices", cert.notices}};
      if (cert.lower) out["rank_certified_lower"] = *cert.lower;
      if (cert.exact) out["rank_certified_exact"] = *cert.exact;
      emit(g, out);
      return 0;
    };
  });

  // eigen
  auto* eigen = app.add_subcommand("eigen", "eigenvalue multiplicity constructions");
  eigen->require_subcommand(1);
  auto* pipeline = eigen->add_subcommand("pipeline", "{0,1}-matrix with a prescribed eigenvalue");
  std::string minpoly, polytext, Ltext;
  std::size_t n = 0, lsize = 0;
  pipeline->add_option("--minpoly", minpoly)->required();
  pipeline->add_option("--n", n)->required();
  pipeline->callback([&] {
    action = [&]() -> int {
      auto r = digraph_pipeline(UPoly::parse(minpoly), n);
      json report = {{"minpoly", minpoly},
                     {"route", r.route},
                     {"multiplicity_exact", r.multiplicity},
                     {"lower_bound", r.lower_bound},
                     {"upper_bound", r.upper_bound},
                     {"realized_c", r.realized_c},
                     {"translated_rank", r.translated_rank},
                     {"patch_ranks", patches_json(Field(), r.patches)}};
      json claims = {{"L", {"0", "1"}}, {"lambda", "0"}};
      emit(g, artifact_json("digraph", r.matrix, claims, {{"report", report}}));
      std::cerr << "multiplicity " << r.multiplicity << " in [" << r.lower_bound << ", " << r.upper_bound << "]\n";
      return 0;
    };
  });
  auto* ptb = eigen->add_subcommand("polytobetter", "L-matrix from a homogeneous relation polynomial");
  ptb->add_option("--poly", polytext)->required();
  ptb->add_option("--L", Ltext)->required();
  ptb->add_option("--l", lsize)->required();
  ptb->callback([&] {
    action = [&]() -> int {
      Field f = Field::parse(g.field);
      LSet l = LSet::parse(f, split_list(Ltext));
      auto r = polytobetter_pipeline(MultiPoly::parse(polytext, Field(), l.size()), l, lsize);
      json report = {{"multiplicity_exact", *r.amplified.multiplicity},
                     {"lower_bound", r.amplified.lower_bound_fine},
                     {"progenitor_size", r.progenitor.matrix.rows()},
                     {"slack", r.slack},
                     {"patch_ranks", patches_json(f, r.amplified.patches)}};
      json claims = {{"L", split_list(Ltext)}, {"lambda", "0"}, {"rank_upper", r.rank_bound},
                     {"rank_certified_exact", r.rank}};
      emit(g, artifact_json("polytobetter", r.matrix, claims, {{"report", report}}));
      std::cerr << "size " << r.matrix.rows() << ", rank " << r.rank << "\n";
      return 0;
    };
  });

  // relations
  auto* rel = app.add_subcommand("relations", "primitive linear relations");
  rel->require_subcommand(1);
  std::size_t bound = 10;
  auto* relp = rel->add_subcommand("primitive", "canonical relation or infeasibility certificate");
  relp->add_option("--L", Ltext)->required();
  relp->callback([&] {
    action = [&]() -> int {
      Field f = Field::parse(g.field);
      LSet l = LSet::parse(f, split_list(Ltext));
      auto r = primitive_relation(l);
      json out = {{"L", split_list(Ltext)}};
      if (r.relation) {
        out["relation"] = int_vec_json(r.relation->A);
      } else {
        json w = json::array();
        for (const auto& x : *r.certificate) w.push_back(to_string(x));
        out["relation"] = nullptr;
        out["certificate"] = w;
      }
      emit(g, out);
      return 0;
    };
  });
  auto* relb = rel->add_subcommand("box", "exhaustive search with |A_i| <= bound");
  relb->add_option("--L", Ltext)->required();
  relb->add_option("--bound", bound);
  relb->callback([&] {
    action = [&]() -> int {
      LSet l = LSet::parse(Field::parse(g.field), split_list(Ltext));
      auto r = primitive_relation_box_search(l, bound);
      emit(g, {{"L", split_list(Ltext)}, {"bound", bound}, {"relation", r ? int_vec_json(r->A) : json(nullptr)}});
      return 0;
    };
  });

  // vanish
  auto* van = app.add_subcommand("vanish", "orders of vanishing and witness polynomials");
  van->require_subcommand(1);
  std::string point;
  auto* vorder = van->add_subcommand("order", "order of vanishing of a polynomial at a point");
  vorder->add_option("--poly", polytext)->required();
  vorder->add_option("--point", point)->required();
  vorder->callback([&] {
    action = [&]() -> int {
      Field f = Field::parse(g.field);
      std::vector<Elem> pt;
      for (const auto& s : split_list(point)) pt.push_back(f.parse_elem(s));
      auto p = MultiPoly::parse(polytext, Field(), pt.size()).over(f);
      auto o = vanishing_order(p, pt);
      emit(g, {{"poly", polytext}, {"point", split_list(point)}, {"order", o.infinite ? json("infinite") : json(o.order)}});
      return 0;
    };
  });
  auto* vwit = van->add_subcommand("witness", "genupper witness polynomial of an L-matrix file");
  vwit->add_option("--matrix", matrix_path)->required();
  vwit->add_option("--L", Ltext, "defaults to the artifact's claimed L");
  vwit->callback([&] {
    action = [&]() -> int {
      json j = read_json(matrix_path);
      PaletteMatrix pm = load_matrix(j);
      const Field& f = pm.field();
      std::vector<std::string> ls;
      if (!Ltext.empty()) ls = split_list(Ltext);
      else if (j.contains("claims") && j["claims"].contains("L")) ls = j["claims"]["L"].get<std::vector<std::string>>();
      else throw UsageError("witness needs --L or an artifact with claimed L");
      auto w = genupper_witness(pm.to_matrix(), LSet::parse(f, ls));
      emit(g, {{"P", w.P.format()}, {"rank", w.rank}, {"r", w.r}, {"v", w.v},
               {"order", w.order.infinite ? json("infinite") : json(w.order.order)}, {"warnings", w.warnings}});
      return 0;
    };
  });

  // search
  auto* search = app.add_subcommand("search", "brute-force oracles");
  search->require_subcommand(1);
  bool symmetric = false;
  std::size_t rr = 0, nmax = 0;
  auto* smin = search->add_subcommand("min-rank", "minimal rank of n x n L-matrices");
  smin->add_option("--L", Ltext)->required();
  smin->add_option("--n", n)->required();
  smin->add_flag("--symmetric", symmetric);
  smin->callback([&] {
    action = [&]() -> int {
      LSet l = LSet::parse(Field::parse(g.field), split_list(Ltext));
      auto r = min_rank({l, n, symmetric});
      emit(g, {{"r_min", r.r_min}, {"witness", matrix_to_json(r.witness)}, {"r_min_with_ones", r.r_min_with_ones},
               {"enumerated", r.enumerated}});
      return 0;
    };
  });
  auto* snr = search->add_subcommand("n-of-r", "largest n with an L-matrix of rank <= r");
  snr->add_option("--L", Ltext)->required();
  snr->add_option("--r", rr)->required();
  snr->add_option("--n-max", nmax)->required();
  snr->add_flag("--symmetric", symmetric);
  snr->callback([&] {
    action = [&]() -> int {
      LSet l = LSet::parse(Field::parse(g.field), split_list(Ltext));
      auto r = n_of_r(l, rr, nmax, symmetric);
      json out = {{"N", r.n}, {"N0", r.n0}, {"witness", matrix_to_json(r.witness)}};
      emit(g, out);
      return 0;
    };
  });
  auto* sbox = search->add_subcommand("relation-box", "exhaustive relation search");
  sbox->add_option("--L", Ltext)->required();
  sbox->add_option("--bound", bound);
  sbox->callback([&] {
    action = [&]() -> int {
      LSet l = LSet::parse(Field::parse(g.field), split_list(Ltext));
      auto r = primitive_relation_box_search(l, bound);
      emit(g, {{"relation", r ? int_vec_json(r->A) : json(nullptr)}, {"bound", bound}});
      return 0;
    };
  });

  // experiment
  auto* exper = app.add_subcommand("experiment", "growth table over a list of q");
  std::string config_path, qlist;
  exper->add_option("--config", config_path, "JSON config; flags below are ignored when given");
  exper->add_option("--construction", cname);
  exper->add_option("--L", lspec);
  exper->add_option("--relation", relspec);
  exper->add_option("--q", qlist, "comma-separated primes");
  exper->callback([&] {
    action = [&]() -> int {
      ExperimentConfig c;
      if (!config_path.empty()) {
        c = ExperimentConfig::from_json(read_json(config_path));
      } else {
        c.construction = cname;
        c.field = g.field;
        if (lspec.empty()) throw UsageError("experiment needs --L");
        c.L = split_list(lspec);
        if (!relspec.empty()) c.relation = parse_relation(relspec);
        for (const auto& s : split_list(qlist.empty() ? throw UsageError("experiment needs --q") : qlist)) {
          try {
            c.qs.push_back(static_cast<std::uint32_t>(std::stoul(s)));
          } catch (const std::exception&) {
            throw UsageError("q '" + s + "' is not a number");
          }
        }
        c.seed = g.seed;
        c.out_dir = g.out;
        c.cert = parse_cert_mode(g.cert);
        c.primes = g.primes;
        c.validate();
      }
      auto outcome = run_experiment(c);
      std::cout << outcome.table.to_csv();
      for (const auto& f : outcome.failures) std::cerr << "failure: " << f << "\n";
      return outcome.ok ? 0 : 1;
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "re-check an artifact's claims from the matrix alone");
  std::string verify_path;
  ver->add_option("file", verify_path)->required();
  ver->callback([&] {
    action = [&]() -> int {
      auto r = verify_file(verify_path);
      std::cout << dump_json({{"ok", r.ok}, {"size", r.size}, {"failures", r.failures}, {"notes", r.notes}});
      return r.ok ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
