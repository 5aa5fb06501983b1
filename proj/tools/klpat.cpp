// klpat: Kazhdan-Lusztig polynomials, pattern maps and verification suites.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "klpat/suites.hpp"

namespace {

using namespace klpat;
using ojson = nlohmann::ordered_json;

// Groups above this size are only enumerated with --slow.
constexpr std::uint64_t kSlowThreshold = 100'000;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCap = 3 };

struct Config {
  std::string type;
  int rank = 0;
  std::string x, w;
  std::string parabolic;
  std::string format = "text";
  std::string cache;
  bool cache_set = false;
  bool slow = false;
  std::size_t cap = kDefaultEnumerationCap;
};

CartanDatum resolve_type(const Config& c) {
  if (c.type.empty()) throw ParseError("--type is required");
  bool has_digits = c.type.find_first_of("0123456789") != std::string::npos;
  if (has_digits) {
    if (c.rank != 0) throw ParseError("give the rank either in --type or with --rank, not both");
    return CartanDatum::parse(c.type);
  }
  if (c.rank <= 0) throw ParseError("--type " + c.type + " needs --rank");
  return CartanDatum::parse(c.type + std::to_string(c.rank));
}

void check_size(const CartanDatum& d, const Config& c) {
  auto order = d.group_order();
  if (order && *order > c.cap)
    throw CapExceeded(d.name() + " has " + std::to_string(*order) + " elements, above --cap " + std::to_string(c.cap));
  if (order && *order > kSlowThreshold && !c.slow)
    throw CapExceeded(d.name() + " has " + std::to_string(*order) + " elements; rerun with --slow");
}

std::string cache_file(const Config& c) {
  if (!c.cache.empty()) return c.cache;
  if (const char* dir = std::getenv("KLPATTERN_CACHE_DIR"); dir && *dir)
    return (std::filesystem::path(dir) / "klpat-cache.txt").string();
  return ".klpat-cache.txt";
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string(flag) + " is required");
}

std::unique_ptr<Workspace> open_workspace(const Config& c) {
  auto d = resolve_type(c);
  check_size(d, c);
  auto ws = std::make_unique<Workspace>(d, c.cap);
  if (c.cache_set) {
    ws->kl.record_queries(true);
    auto res = KLCacheFile::load(cache_file(c), ws->kl);
    for (const auto& r : res.rejected) std::cerr << "cache: rejected " << r << "\n";
  }
  return ws;
}

void close_workspace(const Config& c, const Workspace& ws) {
  if (c.cache_set) KLCacheFile::save(cache_file(c), ws.kl);
}

ojson coefficients(const IntPolynomial& p) {
  auto a = ojson::array();
  for (auto v : p.coefficients()) a.push_back(v);
  return a;
}

int cmd_poly(const Config& c, const std::string& what) {
  require(c.x, "--x");
  require(c.w, "--w");
  auto ws = open_workspace(c);
  const ElementId x = ws->group.parse(c.x), w = ws->group.parse(c.w);
  IntPolynomial p;
  std::int64_t mu = 0;
  if (what == "kl") p = ws->kl.kl_polynomial(x, w);
  if (what == "rpoly") p = ws->kl.r_polynomial(x, w);
  if (what == "mu") mu = ws->kl.mu(x, w);
  close_workspace(c, *ws);
  const std::string xs = ws->group.format(x), wsf = ws->group.format(w);
  if (c.format == "json") {
    ojson j;
    j["schema"] = "klpat." + what + "/1";
    j["type"] = ws->sys.name();
    j["x"] = xs;
    j["w"] = wsf;
    if (what == "mu") {
      j["mu"] = mu;
    } else {
      j["coefficients"] = coefficients(p);
      j["polynomial"] = p.to_string();
      j["at_one"] = p.at_one();
    }
    std::cout << j.dump() << "\n";
  } else if (c.format == "csv") {
    if (what == "mu") {
      std::cout << "type,x,w,mu\n" << ws->sys.name() << "," << csv_field(xs) << "," << csv_field(wsf) << "," << mu << "\n";
    } else {
      std::cout << "type,x,w,coefficients,at_one\n"
                << ws->sys.name() << "," << csv_field(xs) << "," << csv_field(wsf) << "," << csv_field(p.to_csv()) << ","
                << p.at_one() << "\n";
    }
  } else if (what == "mu") {
    std::cout << "mu=" << mu << "\n";
  } else if (what == "kl") {
    std::cout << p.to_string() << " ; P(1)=" << p.at_one() << "\n";
  } else {
    std::cout << p.to_string() << "\n";
  }
  return kOk;
}

int cmd_phi(const Config& c) {
  require(c.w, "--w");
  require(c.parabolic, "--parabolic");
  CoxeterSystem sys(resolve_type(c));
  auto sub = parse_parabolic(sys, c.parabolic, c.cap);
  const auto w = sys.parse_element(c.w);
  const auto by_root = sub.phi_root(w);
  const auto by_coset = sub.phi_coset(w);
  const bool agree = by_root.index == by_coset.phi;
  const auto& u = sub.element(by_root.index);
  const auto flat = sub.flattened(u);
  const std::string intrinsic = sub.intrinsic(by_root.index);
  if (c.format == "json") {
    ojson j;
    j["schema"] = "klpat.phi/1";
    j["type"] = sys.name();
    j["subgroup"] = sub.spec();
    j["simples"] = sub.describe_simples();
    j["w"] = sys.format_element(w);
    j["flattened"] = flat ? ojson(*flat) : ojson(nullptr);
    j["intrinsic"] = intrinsic;
    j["ambient"] = sys.format_element(u);
    j["minimal_coset_element"] = sys.format_element(by_coset.minimal);
    j["constructions_agree"] = agree;
    std::cout << j.dump() << "\n";
  } else if (c.format == "csv") {
    std::cout << "type,subgroup,w,flattened,intrinsic,ambient,minimal_coset_element,constructions_agree\n"
              << sys.name() << "," << csv_field(sub.spec()) << "," << csv_field(sys.format_element(w)) << ","
              << csv_field(flat.value_or("")) << "," << intrinsic << "," << csv_field(sys.format_element(u)) << ","
              << csv_field(sys.format_element(by_coset.minimal)) << "," << (agree ? "true" : "false") << "\n";
  } else {
    std::cout << flat.value_or(intrinsic) << "\n"
              << "intrinsic " << intrinsic << " over " << sub.describe_simples() << "\n"
              << "ambient " << sys.format_element(u) << "\n"
              << "minimal coset element " << sys.format_element(by_coset.minimal) << "\n";
  }
  if (!agree) {
    std::cerr << "error: the root and coset constructions of phi disagree\n";
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_bound(const Config& c) {
  require(c.x, "--x");
  require(c.w, "--w");
  require(c.parabolic, "--parabolic");
  auto ws = open_workspace(c);
  const auto& sys = ws->sys;
  auto sub = parse_parabolic(sys, c.parabolic, c.cap);
  const ElementId xid = ws->group.parse(c.x), wid = ws->group.parse(c.w);
  const auto& x = ws->group.element(xid);
  const auto& w = ws->group.element(wid);
  auto b = main_bound_rhs(sub, x, w, [&](const GroupElement& y, const GroupElement& z) -> std::optional<IntPolynomial> {
    return ws->kl.kl_polynomial(ws->group.id_of(y), ws->group.id_of(z));
  });
  Verdict v;
  v.theorem = "main";
  v.family = std::string(1, family_letter(sys.family()));
  v.rank = sys.rank();
  v.subgroup = sub.spec();
  v.x = ws->group.format(xid);
  v.w = ws->group.format(wid);
  const bool below = ws->group.bruhat_leq(xid, wid);
  const std::int64_t lhs = ws->kl.kl_polynomial(xid, wid).at_one();
  const std::int64_t rhs = below ? *b.rhs : 0;
  v.lhs = std::to_string(lhs);
  v.rhs = std::to_string(rhs);
  v.holds = lhs >= rhs;
  if (!below) v.flags.push_back("x-not-below-w");
  for (std::size_t i = 0; i < b.maximal.size(); ++i) {
    v.maximal_set.push_back(sys.format_element(b.maximal[i]));
    if (below) v.per_term.push_back({v.maximal_set.back(), *b.p_yw[i], b.p_prime[i]});
  }
  close_workspace(c, *ws);
  if (c.format == "json") {
    std::cout << render_json(v) << "\n";
  } else if (c.format == "csv") {
    std::cout << csv_header() << "\n" << render_csv(v) << "\n";
  } else {
    std::cout << render_text(v) << "\n";
    std::cout << "M = {";
    for (std::size_t i = 0; i < v.maximal_set.size(); ++i) std::cout << (i ? ", " : "") << v.maximal_set[i];
    std::cout << "}\n";
    for (const auto& t : v.per_term)
      std::cout << "  y=" << t.y << " P_{y,w}(1)=" << t.p_yw << " P'(1)=" << t.p_prime << "\n";
  }
  return v.holds ? kOk : kVerifyFailed;
}

int cmd_pattern(const Config& c, const std::vector<std::string>& patterns, const std::string& set, bool every) {
  require(c.w, "--w");
  const auto w = parse_permutation(c.w);
  std::vector<Permutation> list;
  if (set == "smooth") list = smoothness_patterns();
  else if (set == "hexagon") list = hexagon_patterns();
  else if (set == "p2") list = p2_patterns();
  else if (!set.empty()) throw ParseError("unknown pattern set '" + set + "' (smooth, hexagon, p2)");
  for (const auto& p : patterns) list.push_back(parse_permutation(p));
  if (list.empty()) throw ParseError("give --pattern or --set");
  ojson results = ojson::array();
  bool any = false;
  for (const auto& p : list) {
    std::vector<std::vector<int>> hits;
    if (every) {
      hits = all_occurrences(w, p);
    } else if (auto h = find_pattern(w, p)) {
      hits.push_back(*h);
    }
    any = any || !hits.empty();
    auto positions = [](const std::vector<int>& h) {
      std::string s;
      for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i] + 1);
      return s;
    };
    if (c.format == "json") {
      ojson j;
      j["pattern"] = format_permutation(p);
      j["contains"] = !hits.empty();
      auto occ = ojson::array();
      for (const auto& h : hits) occ.push_back(positions(h));
      j["occurrences"] = occ;
      results.push_back(j);
    } else if (c.format == "csv") {
      if (hits.empty()) std::cout << csv_field(format_permutation(p)) << ",false,\n";
      for (const auto& h : hits) std::cout << csv_field(format_permutation(p)) << ",true," << csv_field(positions(h)) << "\n";
    } else if (hits.empty()) {
      std::cout << format_permutation(p) << " avoided\n";
    } else {
      for (const auto& h : hits) std::cout << format_permutation(p) << " at " << positions(h) << "\n";
    }
  }
  if (c.format == "json") {
    ojson j;
    j["schema"] = "klpat.pattern/1";
    j["w"] = format_permutation(w);
    j["avoids_all"] = !any;
    j["results"] = results;
    std::cout << j.dump() << "\n";
  } else if (c.format == "text") {
    std::cout << (any ? "contains" : "avoids") << "\n";
  }
  return kOk;
}

int cmd_smooth(const Config& c) {
  require(c.w, "--w");
  const auto perm = parse_permutation(c.w);
  const bool smooth = is_rationally_smooth_typeA(perm);
  Config k = c;
  if (k.type.empty()) k.type = "A" + std::to_string(perm.size() - 1);
  std::optional<IntPolynomial> p;
  if (perm.size() >= 2) {
    auto ws = open_workspace(k);
    if (ws->sys.family() != Family::A || ws->sys.permutation_degree() != static_cast<int>(perm.size()))
      throw ParseError("--type does not match the permutation size");
    p = ws->kl.kl_polynomial(0, ws->group.id_of(ws->sys.from_signed_permutation(perm)));
    close_workspace(k, *ws);
  } else {
    p = IntPolynomial::one();
  }
  const bool agree = (*p == IntPolynomial::one()) == smooth;
  if (c.format == "json") {
    ojson j;
    j["schema"] = "klpat.smooth/1";
    j["w"] = format_permutation(perm);
    j["avoids_4231_3412"] = smooth;
    j["p_1w"] = p->to_string();
    j["agree"] = agree;
    std::cout << j.dump() << "\n";
  } else if (c.format == "csv") {
    std::cout << "w,avoids_4231_3412,p_1w,agree\n"
              << csv_field(format_permutation(perm)) << "," << (smooth ? "true" : "false") << "," << csv_field(p->to_string())
              << "," << (agree ? "true" : "false") << "\n";
  } else {
    std::cout << (smooth ? "smooth" : "singular") << " ; P_{1,w} = " << p->to_string() << "\n";
  }
  return agree ? kOk : kVerifyFailed;
}

int cmd_verify(const Config& c, const std::string& suite, bool all, unsigned jobs, const std::string& records) {
  SuiteOptions o;
  auto d = resolve_type(c);
  check_size(d, c);
  o.type = d.name();
  o.parabolic = c.parabolic;
  o.all = all;
  o.jobs = jobs == 0 ? 1 : jobs;
  o.cap = c.cap;
  if (records == "all") o.records = RecordFilter::All;
  else if (records == "failures") o.records = RecordFilter::Failures;
  else if (records == "none") o.records = RecordFilter::None;
  else throw ParseError("--records must be all, failures or none");
  auto res = run_suite(suite, o);
  if (c.format == "json") {
    for (const auto& v : res.records) std::cout << render_json(v) << "\n";
    std::cout << render_summary_json(res.summary) << "\n";
  } else if (c.format == "csv") {
    std::cout << csv_header() << "\n";
    for (const auto& v : res.records) std::cout << render_csv(v) << "\n";
    std::cerr << render_summary_text(res.summary) << "\n";
  } else {
    for (const auto& v : res.records) std::cout << render_text(v) << "\n";
    std::cout << render_summary_text(res.summary) << "\n";
  }
  return res.summary.failed == 0 ? kOk : kVerifyFailed;
}

int cmd_cache(const Config& c, const std::string& action) {
  const std::string path = cache_file(c);
  if (action == "path") {
    std::cout << path << "\n";
    return kOk;
  }
  if (action == "clear") {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    std::cout << "cleared " << path << "\n";
    return kOk;
  }
  auto records = KLCacheFile::read(path);
  std::map<std::pair<std::string, int>, std::size_t> per_type;
  for (const auto& r : records) ++per_type[{r.family, r.rank}];
  if (action == "stats") {
    std::cout << path << ": " << records.size() << " records\n";
    for (const auto& [k, n] : per_type) std::cout << "  " << k.first << k.second << " " << n << "\n";
    return kOk;
  }
  if (action == "verify") {
    std::size_t rejected = 0;
    for (const auto& [k, n] : per_type) {
      auto d = CartanDatum::parse(k.first + std::to_string(k.second));
      check_size(d, c);
      Workspace ws(d, c.cap);
      auto res = KLCacheFile::load(path, ws.kl);
      // Recompute every accepted value; cached entries are never trusted.
      KLEngine fresh(ws.group);
      for (const auto& [key, p] : ws.kl.known_values()) {
        if (fresh.kl_polynomial(key.first, key.second) != p) {
          ++rejected;
          std::cout << "mismatch " << d.name() << " " << ws.group.format(key.first) << " " << ws.group.format(key.second)
                    << "\n";
        }
      }
      rejected += res.rejected.size();
      for (const auto& r : res.rejected) std::cout << "rejected " << r << "\n";
    }
    std::cout << "checked=" << records.size() << " failed=" << rejected << "\n";
    return rejected == 0 ? kOk : kVerifyFailed;
  }
  throw ParseError("unknown cache action '" + action + "' (stats, verify, clear, path)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig polynomials, pattern maps and verification suites for finite Weyl groups"};
  app.require_subcommand(1);
  Config cfg;
  std::vector<std::string> patterns;
  std::string pattern_set, suite, records = "failures", cache_action;
  bool every = false, all = false;
  unsigned jobs = 1;

  auto common = [&](CLI::App* sub, bool elements, bool parabolic) {
    sub->add_option("--type", cfg.type, "Type such as A3, B4, E6, or a family letter with --rank");
    sub->add_option("--rank", cfg.rank, "Rank when --type is a bare family letter");
    if (elements) {
      sub->add_option("--x", cfg.x, "Element x: one-line notation or a word such as s1s2");
      sub->add_option("--w", cfg.w, "Element w");
    }
    if (parabolic) sub->add_option("--parabolic", cfg.parabolic, "refl:1-3,2-4 | standard:s1,s2 | conj:x|s1 | positions:1,4,6,7 | unsigned");
    sub->add_option("--format", cfg.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--cap", cfg.cap, "Maximum number of group elements to enumerate");
    sub->add_flag("--slow", cfg.slow, "Allow groups with more than 100000 elements");
    sub->add_option("--cache", cfg.cache, "KL cache file (default: $KLPATTERN_CACHE_DIR/klpat-cache.txt)")
        ->expected(0, 1);
  };

  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomial P_{x,w}");
  common(kl, true, false);
  auto* mu = app.add_subcommand("mu", "Leading coefficient mu(x,w)");
  common(mu, true, false);
  auto* rp = app.add_subcommand("rpoly", "R-polynomial R_{x,w}");
  common(rp, true, false);
  auto* phi = app.add_subcommand("phi", "Pattern map of w for a parabolic subgroup");
  common(phi, true, true);
  auto* bound = app.add_subcommand("bound", "Main theorem bound for (x, w, W')");
  common(bound, true, true);
  auto* pat = app.add_subcommand("pattern", "Classical pattern containment in a permutation");
  pat->add_option("--w", cfg.w, "Permutation in one-line notation")->required();
  pat->add_option("--pattern", patterns, "Pattern(s) to search for");
  pat->add_option("--set", pattern_set, "Named pattern list: smooth, hexagon, p2");
  pat->add_flag("--every", every, "List every occurrence");
  pat->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "csv"}));
  auto* smooth = app.add_subcommand("smooth", "Rational smoothness by patterns, cross-checked with P_{1,w}");
  common(smooth, true, false);
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")->required();
  common(verify, false, true);
  verify->add_flag("--all", all, "All parabolic subgroups, not only standard ones");
  verify->add_option("--jobs", jobs, "Worker threads");
  verify->add_option("--records", records, "Which per-check records to print: all, failures, none");
  auto* cache = app.add_subcommand("cache", "Inspect or clear the KL cache");
  cache->add_option("action", cache_action, "stats, verify, clear or path")->required();
  cache->add_option("--path", cfg.cache, "Cache file");
  cache->add_option("--cap", cfg.cap);
  cache->add_flag("--slow", cfg.slow);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    for (auto* sub : app.get_subcommands()) {
      if (auto* opt = sub->get_option_no_throw("--cache"); opt && opt->count() > 0) cfg.cache_set = true;
    }
    if (*kl) return cmd_poly(cfg, "kl");
    if (*mu) return cmd_poly(cfg, "mu");
    if (*rp) return cmd_poly(cfg, "rpoly");
    if (*phi) return cmd_phi(cfg);
    if (*bound) return cmd_bound(cfg);
    if (*pat) return cmd_pattern(cfg, patterns, pattern_set, every);
    if (*smooth) return cmd_smooth(cfg);
    if (*verify) {
      if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return kUsage;
      }
      return cmd_verify(cfg, suite, all, jobs, records);
    }
    if (*cache) return cmd_cache(cfg, cache_action);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kUsage;
}
