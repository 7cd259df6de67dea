#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "engel/analysis.hpp"
#include "engel/ff.hpp"
#include "engel/oracle.hpp"
#include "engel/tracemap.hpp"
#include "engel/words.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using json = nlohmann::ordered_json;
using namespace engel;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> qspec;
  unsigned engel_m = 0;
  std::string word_text;
  std::string format = "csv";
  std::string output;
  bool serial = false;
  int jobs = 0;
  std::uint64_t max_q_class = 64;
  std::uint64_t max_q_pairs = 17;
  // subcommand-specific
  unsigned nmax = 0;
  unsigned prime_orbit = 0;
  bool witness = false;
  std::string mode = "fiber";
  Elt pt_s = 0, pt_t = 0;
};

ExecPolicy policy(const Options& o) {
  return o.serial ? ExecPolicy::serial : ExecPolicy::parallel;
}

OracleCaps caps(const Options& o) {
  return {o.max_q_class, o.max_q_pairs};
}

std::uint64_t min_q(const std::string& cmd) {
  return cmd == "survey" ? 4 : 2;
}

/// Expands "5,7..20,49" to ascending prime powers. An explicit scalar that is
/// not a prime power is a usage error; inside a range, non-prime-powers are
/// skipped with a notice on stderr.
std::vector<std::uint64_t> expand_q(const std::vector<std::string>& spec,
                                    std::uint64_t lo) {
  std::vector<std::uint64_t> out;
  for (const std::string& entry : spec) {
    std::stringstream ss(entry);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      auto dots = tok.find("..");
      try {
        if (dots == std::string::npos) {
          std::uint64_t q = std::stoull(tok);
          if (!is_prime_power(q) || q < lo)
            throw UsageError("q=" + tok + " is not a usable prime power");
          out.push_back(q);
        } else {
          std::uint64_t a = std::stoull(tok.substr(0, dots));
          std::uint64_t b = std::stoull(tok.substr(dots + 2));
          for (std::uint64_t q = std::max(a, lo); q <= b; ++q) {
            if (is_prime_power(q))
              out.push_back(q);
            else
              std::cerr << "notice: skipping q=" << q
                        << " (not a prime power)\n";
          }
        }
      } catch (const std::invalid_argument&) {
        throw UsageError("bad q token: " + tok);
      } catch (const std::out_of_range&) {
        throw UsageError("q out of range: " + tok);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw UsageError("no usable q values");
  return out;
}

std::string join_elts(const std::vector<Elt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(v[i]);
  }
  return s;
}

void emit(const Options& o, const std::string& csv, const json& j) {
  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!o.output.empty()) {
    f.open(o.output);
    if (!f) throw std::runtime_error("cannot open " + o.output);
    os = &f;
  }
  if (o.format == "json")
    *os << j.dump(2) << "\n";
  else
    *os << csv;
}

std::string sl_almost_str(SlAlmost v) {
  switch (v) {
    case SlAlmost::yes: return "yes";
    case SlAlmost::no: return "no";
    default: return "undetermined_at_minus2";
  }
}

json mat_json(const Mat& m) {
  return json::array({m.a, m.b, m.c, m.d});
}

// ---- subcommands ----------------------------------------------------------

void run_survey(const Options& o) {
  if (o.engel_m == 0) throw UsageError("survey requires --engel M (M >= 1)");
  auto qs = expand_q(o.qspec, min_q("survey"));
  std::string csv = "q,p,e,m,psl_surjective,sl_almost,minus_id_attained,"
                    "missing_traces\n";
  json rows = json::array();
  for (std::uint64_t q : qs) {
    Field F(q);
    ExecPolicy pol = policy(o);
    auto psl = decide_psl(F, o.engel_m, pol);

    std::string sl;
    if (F.char2()) {
      sl = psl.surjective ? "yes" : "no";
    } else if (o.engel_m == 1) {
      sl = "yes";  // every SL(2,q) element is a commutator
    } else {
      auto v = decide_sl_almost(F, o.engel_m, pol);
      if (v.verdict == SlAlmost::undetermined_at_minus2 &&
          q <= o.max_q_class) {
        // Resolve trace -2 by brute force.
        auto img = engel_image(F, o.engel_m, caps(o), pol);
        Sl2 G(F);
        bool all = true;
        for (const Mat& z : G.elements_with_trace(F.from_int(-2)))
          if (z != G.minus_identity() && !img.contains(z)) all = false;
        sl = all ? "yes" : "no";
      } else {
        sl = sl_almost_str(v.verdict);
      }
    }

    std::string minus_id;
    if (F.char2()) {
      minus_id = "n/a";
    } else if (o.engel_m == 1) {
      minus_id = "true";  // Remark 4.9 construction
    } else if (q == 5) {
      Sl2 G(F);
      minus_id = engel_image(F, o.engel_m, caps(o), policy(o))
                         .contains(G.minus_identity())
                     ? "true"
                     : "false";
    } else {
      minus_id = minus_id_solvable(F, o.engel_m) ? "true" : "false";
    }

    auto rep = compute_Tn(F, o.engel_m - 1, policy(o));
    std::string missing = join_elts(rep.missing());

    csv += std::to_string(q) + "," + std::to_string(F.p()) + "," +
           std::to_string(F.e()) + "," + std::to_string(o.engel_m) + "," +
           (psl.surjective ? "true" : "false") + "," + sl + "," + minus_id +
           "," + missing + "\n";
    rows.push_back({{"q", q},
                    {"p", F.p()},
                    {"e", F.e()},
                    {"m", o.engel_m},
                    {"psl_surjective", psl.surjective},
                    {"sl_almost", sl},
                    {"minus_id_attained", minus_id},
                    {"missing_traces", rep.missing()}});
  }
  emit(o, csv, rows);
}

void run_image(const Options& o) {
  if (o.engel_m == 0) throw UsageError("image requires --engel M");
  auto qs = expand_q(o.qspec, 2);
  std::string csv =
      "q,p,e,m,n,tn_size,tn_prime_size,full_size,missing_traces\n";
  json rows = json::array();
  for (std::uint64_t q : qs) {
    Field F(q);
    auto rep = compute_Tn(F, o.engel_m - 1, policy(o));
    std::uint64_t tn = 0, tp = 0, full = 0;
    for (Elt a = 0; a < Elt(q); ++a) {
      tn += rep.in_Tn[a];
      tp += rep.in_Tn_prime[a];
      full += rep.in_full[a];
    }
    auto missing = rep.missing();
    csv += std::to_string(q) + "," + std::to_string(F.p()) + "," +
           std::to_string(F.e()) + "," + std::to_string(o.engel_m) + "," +
           std::to_string(o.engel_m - 1) + "," + std::to_string(tn) + "," +
           std::to_string(tp) + "," + std::to_string(full) + "," +
           join_elts(missing) + "\n";
    rows.push_back({{"q", q},
                    {"p", F.p()},
                    {"e", F.e()},
                    {"m", o.engel_m},
                    {"n", o.engel_m - 1},
                    {"tn", rep.Tn()},
                    {"missing_traces", missing}});
  }
  emit(o, csv, rows);
}

void run_orbits(const Options& o) {
  auto qs = expand_q(o.qspec, 2);
  json rows = json::array();
  std::string csv;
  if (o.prime_orbit) {
    csv = "q,p,e,n,found,orbit\n";
    for (std::uint64_t q : qs) {
      Field F(q);
      auto orb = find_prime_orbit(o.prime_orbit, F);
      std::string pts;
      if (orb)
        for (const auto& pt : *orb)
          pts += "(" + std::to_string(pt.s) + " " + std::to_string(pt.t) + ")";
      csv += std::to_string(q) + "," + std::to_string(F.p()) + "," +
             std::to_string(F.e()) + "," + std::to_string(o.prime_orbit) +
             "," + (orb ? "true" : "false") + "," + pts + "\n";
      json r = {{"q", q}, {"n", o.prime_orbit}, {"found", bool(orb)}};
      if (orb) {
        json pj = json::array();
        for (const auto& pt : *orb) pj.push_back({pt.s, pt.t});
        r["orbit"] = pj;
      }
      rows.push_back(r);
    }
  } else {
    csv = "q,p,e,periodic_points,max_preperiod,cycle_lengths\n";
    for (std::uint64_t q : qs) {
      Field F(q);
      auto rep = orbit_analysis(F, policy(o));
      std::string cyc;
      json cj = json::object();
      for (auto& [len, cnt] : rep.cycle_lengths) {
        if (!cyc.empty()) cyc += ';';
        cyc += std::to_string(len) + ":" + std::to_string(cnt);
        cj[std::to_string(len)] = cnt;
      }
      csv += std::to_string(q) + "," + std::to_string(F.p()) + "," +
             std::to_string(F.e()) + "," + std::to_string(rep.periodic_points) +
             "," + std::to_string(rep.max_preperiod) + "," + cyc + "\n";
      rows.push_back({{"q", q},
                      {"periodic_points", rep.periodic_points},
                      {"max_preperiod", rep.max_preperiod},
                      {"cycle_lengths", cj}});
    }
  }
  emit(o, csv, rows);
}

void run_minus_id(const Options& o) {
  if (o.engel_m < 2) throw UsageError("minus-id requires --engel M with M >= 2");
  auto qs = expand_q(o.qspec, 2);
  std::string csv = "q,p,e,m,solvable\n";
  json rows = json::array();
  for (std::uint64_t q : qs) {
    Field F(q);
    if (F.char2())
      throw UsageError("minus-id: q=" + std::to_string(q) +
                       " is even (-id = id)");
    bool solvable;
    std::optional<std::pair<Mat, Mat>> wit;
    if (q == 5) {
      Sl2 G(F);
      solvable = engel_image(F, o.engel_m, caps(o), policy(o))
                     .contains(G.minus_identity());
    } else {
      solvable = minus_id_solvable(F, o.engel_m);
      if (solvable && o.witness) wit = minus_id_witness(F, o.engel_m);
    }
    csv += std::to_string(q) + "," + std::to_string(F.p()) + "," +
           std::to_string(F.e()) + "," + std::to_string(o.engel_m) + "," +
           (solvable ? "true" : "false") + "\n";
    json r = {{"q", q}, {"m", o.engel_m}, {"solvable", solvable}};
    if (wit) {
      r["witness_x"] = mat_json(wit->first);
      r["witness_y"] = mat_json(wit->second);
    }
    rows.push_back(r);
  }
  emit(o, csv, rows);
}

void run_oracle(const Options& o) {
  if (o.engel_m == 0 && o.word_text.empty())
    throw UsageError("oracle requires --engel M or --word W");
  auto qs = expand_q(o.qspec, 2);
  std::string csv = "q,p,e,word,image_size,order,full,psl_classes,"
                    "psl_classes_total,minus_id\n";
  json rows = json::array();
  std::optional<Word> w;
  if (o.engel_m == 0) {
    w = Word::parse(o.word_text);
    if (w->is_identity()) throw UsageError("oracle: word reduces to identity");
  }
  for (std::uint64_t q : qs) {
    Field F(q);
    Sl2 G(F);
    OracleCaps cp = caps(o);
    OracleImage img;
    if (w) {
      // Arbitrary-word image via the same conjugacy reduction: word maps are
      // equivariant under simultaneous conjugation.
      if (q > cp.max_q_class)
        throw ResourceCapError("oracle: q exceeds configured cap");
      img.q = q;
      img.cd = G.conjugacy_classes();
      img.class_hit.assign(img.cd.num_classes(), 0);
      for (std::size_t c = 0; c < img.cd.num_classes(); ++c) {
        const Mat x0 = img.cd.rep(c);
        for (const Mat& y : img.cd.gi.elems) {
          Mat v = evaluate(*w, G, x0, y);
          img.class_hit[img.cd.class_of[img.cd.gi.index(v)]] = 1;
        }
      }
    } else {
      img = engel_image(F, o.engel_m, cp, policy(o));
      // Verification against the trace-map prediction (exit 1 on mismatch).
      auto pred = decide_psl(F, o.engel_m, policy(o));
      std::uint64_t order = q * q * q - q;
      std::uint64_t total = F.char2() ? order : order / 2;
      bool oracle_surj = img.psl_class_count(G) == total;
      if (oracle_surj != pred.surjective)
        throw MismatchError("oracle PSL image disagrees with decide_psl at q=" +
                            std::to_string(q));
      auto ts = img.trace_set(F);
      auto rep = compute_Tn(F, o.engel_m - 1, policy(o));
      Elt neg2 = F.from_int(-2);
      for (Elt a = 0; a < Elt(q); ++a)
        if (a != neg2 && ts[a] != rep.in_Tn[a])
          throw MismatchError("oracle trace set disagrees with T_n at q=" +
                              std::to_string(q) + ", a=" + std::to_string(a));
    }
    std::uint64_t order = q * q * q - q;
    std::uint64_t total = F.char2() ? order : order / 2;
    std::string word_str = w ? w->str() : ("e_" + std::to_string(o.engel_m));
    bool has_minus = !F.char2() && img.contains(G.minus_identity());
    csv += std::to_string(q) + "," + std::to_string(F.p()) + "," +
           std::to_string(F.e()) + "," + word_str + "," +
           std::to_string(img.element_count()) + "," + std::to_string(order) +
           "," + (img.full() ? "true" : "false") + "," +
           std::to_string(img.psl_class_count(G)) + "," +
           std::to_string(total) + "," +
           (F.char2() ? "n/a" : (has_minus ? "true" : "false")) + "\n";
    rows.push_back({{"q", q},
                    {"word", word_str},
                    {"image_size", img.element_count()},
                    {"order", order},
                    {"full", img.full()},
                    {"psl_classes", img.psl_class_count(G)},
                    {"psl_classes_total", total}});
  }
  emit(o, csv, rows);
}

void run_equidist(const Options& o) {
  auto qs = expand_q(o.qspec, 2);
  json rows = json::array();
  std::string csv;
  if (o.mode == "tau") {
    csv = "q,a,count,lower,upper\n";
    for (std::uint64_t q : qs) {
      Field F(q);
      for (Elt a = 0; a < Elt(q); ++a) {
        std::uint64_t c = tau_fiber_count(F, a);
        csv += std::to_string(q) + "," + std::to_string(a) + "," +
               std::to_string(c) + "," + std::to_string(q * q - q) + "," +
               std::to_string(q * q + q) + "\n";
        rows.push_back({{"q", q}, {"a", a}, {"count", c}});
      }
    }
  } else if (o.mode == "ptilde") {
    csv = "q,s,t,count,q4\n";
    for (std::uint64_t q : qs) {
      Field F(q);
      std::uint64_t c = p_tilde_fiber_count(F, o.pt_s, o.pt_t, caps(o),
                                            policy(o));
      csv += std::to_string(q) + "," + std::to_string(o.pt_s) + "," +
             std::to_string(o.pt_t) + "," + std::to_string(c) + "," +
             std::to_string(q * q * q * q) + "\n";
      rows.push_back({{"q", q}, {"s", o.pt_s}, {"t", o.pt_t}, {"count", c}});
    }
  } else {
    if (o.engel_m == 0) throw UsageError("equidist requires --engel M");
    csv = "q,p,e,m,order,s_size,max_dev,min_dev,max_dev_sqrt_q\n";
    for (std::uint64_t q : qs) {
      Field F(q);
      auto fr = fiber_sizes(F, o.engel_m, caps(o), policy(o));
      char buf[160];
      std::snprintf(buf, sizeof buf, "%llu,%u,%u,%u,%llu,%llu,%.6f,%.6f,%.6f\n",
                    (unsigned long long)q, F.p(), F.e(), o.engel_m,
                    (unsigned long long)fr.order,
                    (unsigned long long)fr.s_size, fr.max_dev, fr.min_dev,
                    fr.max_dev * std::sqrt(double(q)));
      csv += buf;
      rows.push_back({{"q", q},
                      {"m", o.engel_m},
                      {"order", fr.order},
                      {"s_size", fr.s_size},
                      {"max_dev", fr.max_dev},
                      {"min_dev", fr.min_dev},
                      {"max_dev_sqrt_q", fr.max_dev * std::sqrt(double(q))}});
    }
  }
  emit(o, csv, rows);
}

void run_trace_poly(const Options& o) {
  Word w = o.word_text.empty() ? Word::engel(o.engel_m ? o.engel_m : 1)
                               : Word::parse(o.word_text);
  TracePoly p = trace_polynomial(w);
  json j = {{"word", w.str()}, {"trace_polynomial", p.str()}};
  emit(o, p.str() + "\n", j);
}

void run_scan_conjecture(const Options& o) {
  auto qs = expand_q(o.qspec, 2);
  std::string csv = "q,p,e,nmax,violations,supports_conjecture\n";
  json rows = json::array();
  for (std::uint64_t q : qs) {
    Field F(q);
    if (F.char2())
      throw UsageError("scan-conjecture: stated for odd q (q=" +
                       std::to_string(q) + " is even)");
    unsigned nmax = o.nmax ? o.nmax : unsigned(q);
    auto bad = scan_conjecture(F, nmax, policy(o));
    std::string vs;
    json vj = json::array();
    for (auto& [n, a] : bad) {
      if (!vs.empty()) vs += ';';
      vs += std::to_string(n) + ":" + std::to_string(a);
      vj.push_back({{"n", n}, {"a", a}});
    }
    csv += std::to_string(q) + "," + std::to_string(F.p()) + "," +
           std::to_string(F.e()) + "," + std::to_string(nmax) + "," + vs +
           "," + (bad.empty() ? "true" : "false") + "\n";
    rows.push_back({{"q", q},
                    {"nmax", nmax},
                    {"violations", vj},
                    {"supports_conjecture", bad.empty()}});
  }
  emit(o, csv, rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-map analysis of Engel word maps on SL(2,q) / PSL(2,q)"};
  app.require_subcommand(1);
  app.set_config("--config");

  Options o;
  auto add_common = [&](CLI::App* c, bool needs_q) {
    auto* qopt = c->add_option("--q", o.qspec,
                               "field sizes: values and ranges, e.g. 5,7..20");
    if (needs_q) qopt->required();
    c->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--output", o.output, "write report to file (default stdout)");
    c->add_flag("--serial", o.serial, "disable data parallelism");
    c->add_option("--jobs", o.jobs, "worker thread count (0 = default)");
    c->add_option("--max-q-class", o.max_q_class,
                  "oracle cap for conjugacy-reduced loops");
    c->add_option("--max-q-pairs", o.max_q_pairs,
                  "oracle cap for full pair enumeration");
  };

  auto* survey = app.add_subcommand("survey", "surjectivity survey per q");
  add_common(survey, true);
  survey->add_option("--engel", o.engel_m, "Engel word index m")->required();

  auto* image = app.add_subcommand("image", "T_n / missing trace report");
  add_common(image, true);
  image->add_option("--engel", o.engel_m, "Engel word index m")->required();

  auto* orbits = app.add_subcommand("orbits", "mu functional-graph report");
  add_common(orbits, true);
  orbits->add_option("--prime-orbit", o.prime_orbit,
                     "search for an orbit of exactly this length");

  auto* minus = app.add_subcommand("minus-id", "e_m(x,y) = -id solvability");
  add_common(minus, true);
  minus->add_option("--engel", o.engel_m, "Engel word index m")->required();
  minus->add_flag("--witness", o.witness, "include witness matrices (json)");

  auto* oracle = app.add_subcommand("oracle", "brute-force image + verification");
  add_common(oracle, true);
  oracle->add_option("--engel", o.engel_m, "Engel word index m");
  oracle->add_option("--word", o.word_text, "literal word, e.g. \"[x,y]\"");

  auto* equidist = app.add_subcommand("equidist", "fiber statistics (sect. 7)");
  add_common(equidist, true);
  equidist->add_option("--engel", o.engel_m, "Engel word index m");
  equidist->add_option("--mode", o.mode, "fiber | tau | ptilde")
      ->check(CLI::IsMember({"fiber", "tau", "ptilde"}));
  equidist->add_option("--s", o.pt_s, "s coordinate for ptilde mode");
  equidist->add_option("--t", o.pt_t, "t coordinate for ptilde mode");

  auto* tpoly = app.add_subcommand("trace-poly", "print tr(w) as P(s,u,t)");
  add_common(tpoly, false);
  tpoly->add_option("--word", o.word_text, "literal word");
  tpoly->add_option("--engel", o.engel_m, "Engel word index m");

  auto* scan = app.add_subcommand("scan-conjecture",
                                  "scan 'a or -a attained' over n <= nmax");
  add_common(scan, true);
  scan->add_option("--nmax", o.nmax, "max iterate (default q)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
#ifdef _OPENMP
    if (o.jobs > 0) omp_set_num_threads(o.jobs);
#endif
    if (survey->parsed()) run_survey(o);
    else if (image->parsed()) run_image(o);
    else if (orbits->parsed()) run_orbits(o);
    else if (minus->parsed()) run_minus_id(o);
    else if (oracle->parsed()) run_oracle(o);
    else if (equidist->parsed()) run_equidist(o);
    else if (tpoly->parsed()) run_trace_poly(o);
    else if (scan->parsed()) run_scan_conjecture(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "word syntax error at position " << e.pos << ": " << e.what()
              << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const MismatchError& e) {
    std::cerr << "verification mismatch: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
