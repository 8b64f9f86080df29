// Command-line front end: monomial diagnostics, separation rewriting,
// witness verification, T-ideal membership, finite-dimensional algebra
// analysis, and tower reports.
//
// Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.

#include "separative/separative.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace separative;
using nlohmann::json;

namespace {

unsigned default_degree_cap() {
  if (const char *env = std::getenv("SEPARATIVE_MAX_DEGREE")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (...) {
      throw std::invalid_argument("SEPARATIVE_MAX_DEGREE is not a number");
    }
  }
  return kDefaultDegreeCap;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Field line of a presentation/algebra file, for template dispatch.
std::optional<long long> field_of_file(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string head, tok;
    if (ls >> head >> tok && head == "field") return parse_field_header(tok);
  }
  throw ParseError("file has no field line");
}

std::optional<long long> parse_field_flag(const std::string &spec) {
  return parse_field_header(spec);
}

void run_mono_info(const std::string &mon_text) {
  Monomial w = parse_monomial(mon_text);
  std::cout << "monomial: " << to_string(w) << "\n";
  std::cout << "length: " << w.length() << "\n";
  std::cout << "submonomial lengths:";
  for (auto l : submonomial_length_set(w)) std::cout << " " << l;
  std::cout << "\n";
  std::cout << "separating profile:";
  for (unsigned m = 0; m < w.length(); ++m)
    if (is_m_separating(w, m)) std::cout << " " << m;
  std::cout << "\n";
}

template <class F>
void run_sep_rewrite(F field, const std::string &mon_text, const std::string &variety,
                     unsigned n, unsigned cap) {
  Monomial w = parse_monomial(mon_text);
  auto P = builtin_presentation(variety, field);
  SeparationRewriter<F> rw(P, cap);
  std::cout << to_string(rw.separate_n(w, n)) << "\n";
}

template <class F> int print_witness_report(const VarietyPresentation<F> &P, unsigned cap) {
  if (!P.witness()) {
    std::cout << "presentation '" << P.name() << "' carries no witness\n";
    return 1;
  }
  auto report = verify_witness(P, cap);
  for (auto &e : report.entries) {
    std::cout << (e.split_form_ok && e.congruence_ok ? "ok   " : "FAIL ") << to_string(e.shape)
              << " " << to_string(e.side) << "  split-form=" << (e.split_form_ok ? "yes" : "no")
              << " congruence=" << (e.congruence_ok ? "yes" : "no");
    if (!e.message.empty()) std::cout << "  (" << e.message << ")";
    std::cout << "\n";
  }
  std::cout << (report.ok() ? "witness verified" : "witness verification FAILED") << "\n";
  return report.ok() ? 0 : 1;
}

template <class F>
void run_alg_analyze(const StructAlgebra<F> &A) {
  std::cout << "dim: " << A.dim() << "\n";
  auto nil = is_nilpotent(A);
  unsigned limit = nil.nilpotent ? *nil.index : A.dim() + 2;
  auto chain = filtration_chain(A, std::max(2u, limit));
  std::cout << "filtration dims:";
  for (auto &s : chain) std::cout << " " << s.dim();
  std::cout << "\n";
  if (nil.nilpotent)
    std::cout << "nilpotent: yes (index " << *nil.index << ")\n";
  else
    std::cout << "nilpotent: no (filtration stabilizes above zero)\n";
  auto sol = is_solvable(A);
  unsigned dlimit = sol.solvable ? *sol.derived_length : 4;
  auto dchain = derived_chain(A, std::max(1u, dlimit));
  std::cout << "derived series dims:";
  for (auto &s : dchain) std::cout << " " << s.dim();
  std::cout << "\n";
  if (sol.solvable)
    std::cout << "solvable: yes (derived length " << *sol.derived_length << ")\n";
  else
    std::cout << "solvable: no\n";
}

template <class F>
void run_tower_report(F field, const std::string &family, unsigned levels, unsigned n,
                      bool as_json, unsigned max_level) {
  if (levels > max_level)
    throw DomainError("tower report: requested level " + std::to_string(levels) +
                      " exceeds --max-level " + std::to_string(max_level));
  auto T = build_tower(family, levels, field);
  auto rows = tower_report(T, n);
  if (as_json) {
    json arr = json::array();
    for (auto &r : rows) {
      json row;
      row["level"] = r.level;
      row["dim"] = r.dim;
      row["nilindex"] = r.nilindex ? json(*r.nilindex) : json(nullptr);
      row["codim"] = r.codim;
      row["defect"] = r.defect ? json(*r.defect) : json(nullptr);
      row["diagrank"] = r.diagrank ? json(*r.diagrank) : json(nullptr);
      arr.push_back(row);
    }
    std::cout << arr.dump(2) << "\n";
    return;
  }
  std::cout << std::left << std::setw(7) << "level" << std::setw(6) << "dim" << std::setw(10)
            << "nilindex" << std::setw(7) << "codim" << std::setw(8) << "defect" << std::setw(9)
            << "diagrank" << "\n";
  auto opt = [](const std::optional<unsigned> &v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  for (auto &r : rows) {
    std::cout << std::left << std::setw(7) << r.level << std::setw(6) << r.dim << std::setw(10)
              << opt(r.nilindex) << std::setw(7) << r.codim << std::setw(8) << opt(r.defect)
              << std::setw(9) << opt(r.diagrank) << "\n";
  }
}

template <class F>
void run_tower_diag(F field, const std::string &family, unsigned level, unsigned max_level) {
  if (level > max_level)
    throw DomainError("tower diag: level exceeds --max-level " + std::to_string(max_level));
  if (family != "pqr" && family != "pqr-comm")
    throw std::invalid_argument("tower diag: the diagonal element exists for pqr and pqr-comm");
  StructAlgebra<F> A =
      family == "pqr" ? build_pqr(level, field) : build_pqr_comm(level, field);
  auto diag = diag_element(family, A);
  std::cout << "level: " << level << "\n";
  std::cout << "diag: " << A.element_str(diag) << "\n";
  std::cout << "diag rank: " << r_rank(family, A, diag) << "\n";
  std::cout << "min products lower bound: " << min_products_lower_bound(family, A, diag)
            << "\n";
}

template <class F> VarietyPresentation<F> presentation_from_flags(F field,
                                                                  const std::string &file,
                                                                  const std::string &builtin) {
  if (!file.empty()) return parse_presentation(field, read_file(file), file);
  return builtin_presentation(builtin, field);
}

int dispatch(int argc, char **argv) {
  CLI::App app{"separative: separation rewriting and nilpotent filtrations for free "
               "nonassociative algebras"};
  app.require_subcommand(1);
  unsigned degree_cap = default_degree_cap();
  unsigned max_level = kDefaultMaxLevel;

  // mono
  auto *mono = app.add_subcommand("mono", "monomial diagnostics");
  mono->require_subcommand(1);
  auto *mono_info = mono->add_subcommand("info", "length, submonomial lengths, separating profile");
  std::string mono_text;
  mono_info->add_option("monomial", mono_text, "monomial text")->required();
  auto *mono_sep = mono->add_subcommand("separating", "range separation test");
  std::string mono_sep_text;
  std::vector<unsigned> range;
  mono_sep->add_option("monomial", mono_sep_text, "monomial text")->required();
  mono_sep->add_option("--range", range, "n N")->expected(2)->required();

  // sep rewrite
  auto *sep = app.add_subcommand("sep", "separation rewriting");
  sep->require_subcommand(1);
  auto *sep_rewrite = sep->add_subcommand("rewrite", "rewrite into separating monomials");
  std::string sep_mon, sep_variety = "associative", sep_field = "Q";
  unsigned sep_n = 1;
  sep_rewrite->add_option("monomial", sep_mon, "monomial text")->required();
  sep_rewrite->add_option("--variety", sep_variety, "builtin variety name")->required();
  sep_rewrite->add_option("--n", sep_n, "separation level")->required();
  sep_rewrite->add_option("--field", sep_field, "Q or GF(p)");
  sep_rewrite->add_option("--max-degree", degree_cap, "degree cap");

  // variety verify
  auto *variety = app.add_subcommand("variety", "variety presentations");
  variety->require_subcommand(1);
  auto *variety_verify = variety->add_subcommand("verify", "verify a separativity witness");
  std::string vv_file, vv_builtin, vv_field = "Q";
  variety_verify->add_option("--file", vv_file, "presentation file");
  variety_verify->add_option("--builtin", vv_builtin, "builtin presentation name");
  variety_verify->add_option("--field", vv_field, "field for --builtin (Q or GF(p))");
  variety_verify->add_option("--max-degree", degree_cap, "degree cap");

  // tideal member
  auto *tideal = app.add_subcommand("tideal", "T-ideal membership");
  tideal->require_subcommand(1);
  auto *tideal_member = tideal->add_subcommand("member", "congruence-to-zero membership");
  std::string tm_variety, tm_poly, tm_field = "Q";
  tideal_member->add_option("--variety", tm_variety, "builtin variety name")->required();
  tideal_member->add_option("--poly", tm_poly, "polynomial text")->required();
  tideal_member->add_option("--field", tm_field, "Q or GF(p)");
  tideal_member->add_option("--max-degree", degree_cap, "degree cap");

  // alg
  auto *alg = app.add_subcommand("alg", "finite-dimensional algebras");
  alg->require_subcommand(1);
  auto *alg_analyze = alg->add_subcommand("analyze", "filtration, nilpotency, derived series");
  std::string aa_file;
  alg_analyze->add_option("--file", aa_file, "algebra file")->required();
  auto *alg_check = alg->add_subcommand("check-identity", "does the algebra satisfy an identity");
  std::string ac_file, ac_poly;
  alg_check->add_option("--file", ac_file, "algebra file")->required();
  alg_check->add_option("--poly", ac_poly, "polynomial text")->required();
  alg_check->add_option("--max-degree", degree_cap, "degree cap");

  // tower
  auto *tower = app.add_subcommand("tower", "truncated towers");
  tower->require_subcommand(1);
  auto *tower_rep = tower->add_subcommand("report", "per-level diagnostic table");
  std::string tr_family = "pqr", tr_field = "Q";
  unsigned tr_levels = 8, tr_n = 2;
  bool tr_json = false;
  tower_rep->add_option("--family", tr_family, "pqr|pqr-comm|pqr-alt|free-assoc")->required();
  tower_rep->add_option("--levels", tr_levels, "top level (from 2)");
  tower_rep->add_option("--n", tr_n, "filtration depth for codim/defect");
  tower_rep->add_option("--field", tr_field, "Q or GF(p)");
  tower_rep->add_flag("--json", tr_json, "emit JSON instead of the aligned table");
  tower_rep->add_option("--max-level", max_level, "level cap");
  auto *tower_diag = tower->add_subcommand("diag", "diagonal element rank and product bound");
  std::string td_family = "pqr", td_field = "Q";
  unsigned td_level = 8;
  tower_diag->add_option("--family", td_family, "pqr|pqr-comm")->required();
  tower_diag->add_option("--level", td_level, "level index")->required();
  tower_diag->add_option("--field", td_field, "Q or GF(p)");
  tower_diag->add_option("--max-level", max_level, "level cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto with_field = [&](const std::string &spec, auto &&fn) {
    auto p = parse_field_flag(spec);
    if (p)
      fn(PrimeField(*p));
    else
      fn(RationalField{});
  };

  if (mono_info->parsed()) {
    run_mono_info(mono_text);
    return 0;
  }
  if (mono_sep->parsed()) {
    Monomial w = parse_monomial(mono_sep_text);
    std::cout << (is_range_separating(w, range[0], range[1]) ? "true" : "false") << "\n";
    return 0;
  }
  if (sep_rewrite->parsed()) {
    with_field(sep_field,
               [&](auto field) { run_sep_rewrite(field, sep_mon, sep_variety, sep_n, degree_cap); });
    return 0;
  }
  if (variety_verify->parsed()) {
    if (vv_file.empty() == vv_builtin.empty())
      throw std::invalid_argument("variety verify: pass exactly one of --file / --builtin");
    int rc = 0;
    if (!vv_file.empty()) {
      std::string text = read_file(vv_file);
      auto p = field_of_file(text);
      if (p) {
        PrimeField gf(*p);
        rc = print_witness_report(parse_presentation(gf, text, vv_file), degree_cap);
      } else {
        RationalField q;
        rc = print_witness_report(parse_presentation(q, text, vv_file), degree_cap);
      }
    } else {
      with_field(vv_field, [&](auto field) {
        rc = print_witness_report(builtin_presentation(vv_builtin, field), degree_cap);
      });
    }
    return rc;
  }
  if (tideal_member->parsed()) {
    with_field(tm_field, [&](auto field) {
      using F = decltype(field);
      auto P = builtin_presentation(tm_variety, field);
      auto f = parse_polynomial(field, tm_poly);
      bool member = is_congruent(f, Polynomial<F>(field), P, degree_cap);
      std::cout << (member ? "true" : "false") << "\n";
    });
    return 0;
  }
  if (alg_analyze->parsed()) {
    std::string text = read_file(aa_file);
    auto p = field_of_file(text);
    if (p) {
      PrimeField gf(*p);
      run_alg_analyze(parse_algebra(gf, text));
    } else {
      RationalField q;
      run_alg_analyze(parse_algebra(q, text));
    }
    return 0;
  }
  if (alg_check->parsed()) {
    std::string text = read_file(ac_file);
    auto p = field_of_file(text);
    SatisfiesOptions opts;
    opts.degree_cap = degree_cap;
    if (p) {
      PrimeField gf(*p);
      auto A = parse_algebra(gf, text);
      std::cout << (satisfies_identity(A, parse_polynomial(gf, ac_poly), opts) ? "true" : "false")
                << "\n";
    } else {
      RationalField q;
      auto A = parse_algebra(q, text);
      std::cout << (satisfies_identity(A, parse_polynomial(q, ac_poly), opts) ? "true" : "false")
                << "\n";
    }
    return 0;
  }
  if (tower_rep->parsed()) {
    with_field(tr_field, [&](auto field) {
      run_tower_report(field, tr_family, tr_levels, tr_n, tr_json, max_level);
    });
    return 0;
  }
  if (tower_diag->parsed()) {
    with_field(td_field,
               [&](auto field) { run_tower_diag(field, td_family, td_level, max_level); });
    return 0;
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return dispatch(argc, argv);
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
