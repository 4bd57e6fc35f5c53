#include "fg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "fg/cut.hpp"
#include "fg/decomposition.hpp"
#include "fg/families.hpp"
#include "fg/gamma.hpp"
#include "fg/quadratic.hpp"
#include "fg/reports.hpp"

namespace fg {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string letters_text(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto s : w.letters()) {
    if (!out.empty()) out += ' ';
    out += letter_name(letter_of(s));
    if (s < 0) out += "^-1";
  }
  return out;
}

struct SeqArgs {
  int m = 0;
  int n = 1;
  bool demo2 = false;

  void add(CLI::App* c) {
    c->add_option("--m", m, "number of coefficient pairs")->check(CLI::NonNegativeNumber);
    c->add_option("--n", n, "genus")->check(CLI::NonNegativeNumber);
    c->add_flag("--demo2", demo2, "two-twist sequence for [x,y]=[a,b]");
  }
  BasicSequence build() const {
    if (demo2) return demo2_sequence();
    return basic_sequence(build_standard(Orientation::Orientable, n, m, m > 0));
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"free group equations toolkit", "fgtool"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  std::uint64_t seed = 1;
  app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--seed", seed, "seed for randomized suites");
  int status = 0;
  auto structured = [&] { return format == "structured"; };

  // word
  auto* word = app.add_subcommand("word", "word arithmetic");
  word->require_subcommand(1);
  std::string wtext;
  auto* w_reduce = word->add_subcommand("reduce", "freely reduce a word");
  w_reduce->add_option("word", wtext)->required();
  w_reduce->callback([&] { out << to_string(parse_word(wtext)) << "\n"; });
  auto* w_cyc = word->add_subcommand("cyclic", "cyclic reduction w = c^-1 core c");
  w_cyc->add_option("word", wtext)->required();
  w_cyc->callback([&] {
    auto cr = cyclic_reduce(parse_word(wtext));
    out << "core " << to_string(cr.core) << "\nconjugator " << to_string(cr.conjugator) << "\n";
  });
  auto* w_root = word->add_subcommand("root", "primitive root and exponent");
  w_root->add_option("word", wtext)->required();
  w_root->callback([&] {
    auto pr = power_root(parse_word(wtext));
    out << "root " << to_string(pr.root) << "\nexponent " << pr.exponent << "\n";
  });

  // eq
  auto* eqc = app.add_subcommand("eq", "quadratic equations");
  eqc->require_subcommand(1);
  std::string eq_text, beta_text;
  auto* eq_check = eqc->add_subcommand("check", "check a solution");
  eq_check->add_option("--eq", eq_text)->required();
  eq_check->add_option("--beta", beta_text)->required();
  eq_check->callback([&] {
    auto S = parse_equation(eq_text);
    bool ok = check_solution(S, parse_assignment(beta_text));
    out << to_string(S) << "\n" << (ok ? "solution" : "not a solution") << "\n";
    if (!ok) status = 1;
  });

  // gamma
  auto* gamma = app.add_subcommand("gamma", "basic sequences and their powers");
  gamma->require_subcommand(1);
  SeqArgs sa;
  std::string p_text;
  std::optional<int> j_opt;
  bool syllables = false;

  auto* g_seq = gamma->add_subcommand("seq", "list the basic sequence");
  sa.add(g_seq);
  g_seq->callback([&] {
    auto G = sa.build();
    out << "K " << G.K() << "\n";
    for (const auto& g : G.gammas) {
      out << g.label << " A=" << to_string(g.T);
      for (const auto& mv : g.moves) out << " " << letter_name(mv.gen) << "->" << to_string(g.image(mv.gen, 1));
      out << "\n";
    }
  });

  auto* g_apply = gamma->add_subcommand("apply", "image of a word under phi_{j,p}, then beta");
  sa.add(g_apply);
  g_apply->add_option("--p", p_text)->required();
  g_apply->add_option("--j", j_opt, "use the first j entries of p");
  g_apply->add_option("--word", wtext)->required();
  g_apply->add_option("--beta", beta_text);
  g_apply->add_flag("--syllables", syllables, "print in syllable form");
  g_apply->callback([&] {
    auto G = sa.build();
    Tuple p = parse_tuple(p_text);
    if (j_opt) {
      if (*j_opt < 0 || *j_opt > static_cast<int>(p.size())) throw LengthMismatch("--j exceeds |p|");
      p.resize(static_cast<std::size_t>(*j_opt));
    }
    Word w = phi_cached(G, p).apply(parse_word(wtext));
    if (!beta_text.empty()) w = parse_assignment(beta_text).apply(w);
    out << (syllables ? to_string(w) : letters_text(w)) << "\n";
  });

  auto* g_lt = gamma->add_subcommand("lt", "leading term A_j");
  sa.add(g_lt);
  g_lt->add_option("--p", p_text)->required();
  g_lt->add_option("--j", j_opt);
  g_lt->callback([&] {
    auto G = sa.build();
    Tuple p = parse_tuple(p_text);
    int j = j_opt.value_or(static_cast<int>(p.size()));
    auto lt = leading_term(G, j, p);
    out << "A" << j << " " << to_string(lt.A) << "\n";
    if (lt.has_star) {
      out << "star " << to_string(lt.star) << "\n";
      out << "star_core " << to_string(lt.star_core) << "\n";
      out << "star_core_equals_A " << (lt.star_core_equals_A ? "yes" : "no") << "\n";
    }
  });

  auto* g_cat = gamma->add_subcommand("catalog", "Sub_k of the images of all generators under phi_K");
  sa.add(g_cat);
  int sub_k = 3;
  g_cat->add_option("--p", p_text)->required();
  g_cat->add_option("--sub", sub_k)->check(CLI::PositiveNumber);
  g_cat->callback([&] {
    auto G = sa.build();
    for (const auto& s : sorted_strings(image_subwords(G, parse_tuple(p_text), sub_k))) out << s << "\n";
  });

  // decomp
  auto* decomp = app.add_subcommand("decomp", "period decompositions");
  decomp->require_subcommand(1);
  std::string period_text;
  std::int64_t min_q = 1, N = 1;
  auto* d_stable = decomp->add_subcommand("stable", "all maximal stable occurrences");
  d_stable->add_option("--period", period_text)->required();
  d_stable->add_option("--min-q", min_q);
  d_stable->add_option("--word", wtext)->required();
  d_stable->callback([&] {
    out << to_string(canonical_decomposition(parse_word(wtext), parse_word(period_text), min_q)) << "\n";
  });
  auto* d_nlarge = decomp->add_subcommand("nlarge", "N-large decomposition");
  d_nlarge->add_option("--period", period_text)->required();
  d_nlarge->add_option("--N", N)->required();
  d_nlarge->add_option("--word", wtext)->required();
  d_nlarge->callback([&] {
    out << to_string(n_large_decomposition(parse_word(wtext), parse_word(period_text), N)) << "\n";
  });

  // cut
  auto* cut = app.add_subcommand("cut", "cut equations");
  cut->require_subcommand(1);
  std::string file, mode = "graphic", schedule, R_text;
  std::int64_t size = 1;
  std::optional<std::int64_t> N_opt;
  auto* c_verify = cut->add_subcommand("verify", "check the stored solution");
  c_verify->add_option("file", file)->required();
  c_verify->add_option("--mode", mode)->check(CLI::IsMember({"graphic", "group"}));
  c_verify->callback([&] {
    auto pi = parse_cut_equation(read_file(file));
    auto rep = verify_solution(pi, mode == "group" ? SolutionMode::Group : SolutionMode::Graphic);
    for (const auto& v : rep.intervals)
      out << (v.ok ? "ok   " : "FAIL ") << v.id << (v.reason.empty() ? "" : " " + v.reason) << "\n";
    for (const auto& p : rep.problems) out << "FAIL " << p << "\n";
    out << "verdict " << (rep.ok ? "PASS" : "FAIL") << "\n";
    if (!rep.ok) status = 1;
  });
  auto* c_tstar = cut->add_subcommand("tstar", "one T* step");
  c_tstar->add_option("file", file)->required();
  c_tstar->add_option("--period", period_text)->required();
  c_tstar->add_option("--R", R_text, "A* = R^-1 A R");
  c_tstar->add_option("--size", size);
  c_tstar->add_option("--N", N_opt);
  c_tstar->callback([&] {
    auto pi = parse_cut_equation(read_file(file));
    GammaCutEquation g{pi, parse_word(period_text), R_text.empty() ? Word() : parse_word(R_text), size, 0, {}};
    auto res = t_star(g, TStarOptions{N_opt, std::nullopt});
    out << "# N=" << res.N << (res.identity ? " identity" : "") << "\n";
    for (const auto& o : res.omitted) out << "# omitted " << o << "\n";
    out << to_string(res.result);
  });
  auto* c_iter = cut->add_subcommand("iterate", "run a T* schedule");
  c_iter->add_option("file", file)->required();
  c_iter->add_option("--schedule", schedule)->required();
  int grid = 1;
  c_iter->add_option("--grid", grid)->check(CLI::PositiveNumber);
  c_iter->callback([&] {
    auto tr = iterate(parse_cut_equation(read_file(file)), parse_schedule(schedule), grid);
    for (const auto& e : tr.entries) {
      if (structured())
        out << "step=" << e.step << " comp=\"" << to_string(e.comp) << "\" length=" << e.m.length
            << " S=" << e.m.S << " width=" << e.m.width << " identity=" << e.identity
            << " verified=" << e.verified << "\n";
      else
        out << e.step << " [" << to_string(e.comp) << "] S=" << e.m.S << " width=" << e.m.width
            << (e.identity ? " identity" : "") << (e.verified ? "" : " UNVERIFIED") << "\n";
    }
    out << "zero " << (tr.reached_zero ? "yes" : "no") << "\n";
    out << "stabilized " << tr.stabilized_at << "\n";
    for (const auto& v : tr.violations) out << "violation " << v << "\n";
    if (!tr.violations.empty()) status = 1;
  });
  auto* c_ge = cut->add_subcommand("export-ge", "associated generalized equation");
  c_ge->add_option("file", file)->required();
  c_ge->callback([&] { out << to_string(to_generalized(parse_cut_equation(read_file(file)))); });
  auto* c_synth = cut->add_subcommand("synth", "random cut equation with a planted solution");
  std::string shape = "random";
  SyntheticOptions so;
  c_synth->add_option("--shape", shape)->check(CLI::IsMember({"random", "collapse", "peel"}));
  c_synth->add_option("--size", so.size);
  c_synth->add_option("--intervals", so.intervals);
  c_synth->add_flag("--twisted", so.twisted);
  c_synth->callback([&] {
    so.shape = shape == "collapse" ? SyntheticOptions::Shape::Collapse
               : shape == "peel"   ? SyntheticOptions::Shape::Peel
                                   : SyntheticOptions::Shape::Random;
    out << to_string(synthetic_cut_equation(seed, so));
  });

  // family
  auto* fam = app.add_subcommand("family", "solution families");
  fam->require_subcommand(1);
  int L = 0;
  auto* f_gen = fam->add_subcommand("gen", "psi_{L,p} = phi_{L,p} then beta");
  f_gen->add_option("--eq", eq_text);
  f_gen->add_flag("--demo2", sa.demo2);
  f_gen->add_option("--L", L);
  f_gen->add_option("--p", p_text)->required();
  f_gen->add_option("--beta", beta_text)->required();
  f_gen->callback([&] {
    if (eq_text.empty() && !sa.demo2) throw InvalidForm("need --eq or --demo2");
    BasicSequence G = sa.demo2 ? demo2_sequence() : basic_sequence(parse_equation(eq_text));
    Tuple p = parse_tuple(p_text);
    if (L == 0) L = static_cast<int>(p.size());
    auto F = family(G, L, {p}, parse_assignment(beta_text));
    auto psi = F.member(p);
    for (auto g : G.generators) out << letter_name(g) << " = " << to_string(psi.image(g)) << "\n";
    bool ok = F.verify(p);
    out << "solution " << (ok ? "yes" : "no") << "\n";
    if (!ok) status = 1;
  });
  auto* f_cancel = fam->add_subcommand("cancel", "small cancellation check on the required pairs");
  std::int64_t lambda = 10;
  bool big = false;
  BigPowerParams bp;
  f_cancel->add_option("--eq", eq_text)->required();
  f_cancel->add_option("--beta", beta_text)->required();
  f_cancel->add_option("--lambda", lambda)->check(CLI::PositiveNumber);
  f_cancel->add_flag("--big", big, "replace beta by the big-power solution built from it");
  f_cancel->add_option("--big-n", bp.n);
  f_cancel->add_option("--big-k", bp.k);
  f_cancel->add_option("--big-m", bp.m);
  f_cancel->add_option("--big-q", bp.q);
  f_cancel->add_option("--p", p_text, "tuple for phi_K in the pair set");
  f_cancel->callback([&] {
    auto S = parse_equation(eq_text);
    Homomorphism beta = parse_assignment(beta_text);
    if (big) beta = big_power_beta(S, beta, bp);
    bool sol = check_solution(S, beta);
    auto rep = check_small_cancellation(beta, lambda, S.m, S.n, p_text.empty() ? Tuple{} : parse_tuple(p_text));
    out << "solution " << (sol ? "yes" : "no") << "\n" << to_string(rep);
    if (!sol || !rep.ok) status = 1;
  });
  auto* f_merz = fam->add_subcommand("merz", "words b a^{m1} b ... a^{mk} b");
  std::vector<std::string> specs;
  f_merz->add_option("specs", specs)->required();
  f_merz->callback([&] {
    for (const auto& s : specs) out << to_string(merzljakov_word(parse_tuple(s))) << "\n";
  });

  // report
  auto* rep = app.add_subcommand("report", "reproduce a suite of displayed formulas");
  std::string suite;
  ReportOptions ro;
  std::optional<int> rm, rn;
  rep->add_option("suite", suite)->required()->check(CLI::IsMember(report_suites()));
  rep->add_option("--m", rm);
  rep->add_option("--n", rn);
  rep->add_option("--p", p_text);
  rep->add_option("--instances", ro.instances)->check(CLI::PositiveNumber);
  rep->callback([&] {
    ro.m = rm;
    ro.n = rn;
    ro.seed = seed;
    if (!p_text.empty()) ro.p = parse_tuple(p_text);
    auto r = report_suite(suite, ro);
    out << to_string(r, structured());
    if (!r.ok()) status = 1;
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return 2;
  } catch (const BaseNotASolution& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const WitnessNotASolution& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 2;
  }
  return status;
}

}  // namespace fg
