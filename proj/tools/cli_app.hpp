#ifndef CONTRACTIONS_TOOLS_CLI_APP_HPP_
#define CONTRACTIONS_TOOLS_CLI_APP_HPP_

// The contractions command-line tool, as a function of its arguments and two
// streams so the tests can drive it in-process.
//
// Exit codes: 0 every checked value matches, 1 some value mismatches,
// 2 usage, parse or scale error, 3 some rank search ran out of budget.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "contractions/cache.hpp"
#include "contractions/contractions.hpp"

namespace contractions::cli {

  inline constexpr int kExitOk           = 0;
  inline constexpr int kExitMismatch     = 1;
  inline constexpr int kExitUsage        = 2;
  inline constexpr int kExitInconclusive = 3;

  struct Range {
    std::size_t lo;
    std::size_t hi;
  };

  // "A..B" or a single "A".
  inline Range parse_range(std::string const& text) {
    auto bad = [&] {
      return Error(ErrorCode::syntax_error,
                   "bad range \"" + text + "\", expected A..B");
    };
    auto const dots = text.find("..");
    auto const lo   = detail::parse_int(text.substr(0, dots));
    auto const hi   = dots == std::string::npos
                          ? lo
                          : detail::parse_int(text.substr(dots + 2));
    if (!lo || !hi || *lo < 1 || *hi < *lo) {
      throw bad();
    }
    return {static_cast<std::size_t>(*lo), static_cast<std::size_t>(*hi)};
  }

  inline std::vector<std::string> split_csv(std::string const& text) {
    std::vector<std::string> out;
    std::stringstream        ss(text);
    std::string              item;
    while (std::getline(ss, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), ::isspace),
                 item.end());
      if (!item.empty()) {
        out.push_back(item);
      }
    }
    return out;
  }

  // A family argument with "*" in place of p expands to p = 1..n.
  struct SweepSpec {
    std::string        spec;  // without the ":*"
    bool               wildcard = false;
  };

  inline SweepSpec parse_sweep(std::string const& s) {
    if (s.size() > 2 && s.ends_with(":*")) {
      return {s.substr(0, s.size() - 2), true};
    }
    return {s, false};
  }

  inline std::vector<std::string> expand(SweepSpec const& s, std::size_t n) {
    if (!s.wildcard) {
      return {s.spec};
    }
    std::vector<std::string> out;
    for (std::size_t p = 1; p <= n; ++p) {
      out.push_back(s.spec + ":" + std::to_string(p));
    }
    return out;
  }

  struct Options {
    std::string n;
    std::string families;
    std::string family;
    std::string format = "lines";
    std::string method;
    unsigned    jobs   = 1;
    std::uint64_t budget = MinRankOptions{}.budget;
    std::string cache_dir;
    bool        force_scale = false;
    // factorize
    std::string        element;
    std::string        gens;
    std::optional<int> p;
    std::string        mode = "plain";
    // greens
    std::string relation = "abstract";
  };

  inline std::vector<Method> methods_for(std::string const& m) {
    if (m == "filter") return {Method::filter};
    if (m == "construct") return {Method::construct};
    if (m == "both") return {Method::filter, Method::construct};
    throw Error(ErrorCode::syntax_error,
                "bad method \"" + m + "\", expected filter|construct|both");
  }

  // Enumeration shared by every cell of one invocation: ambient filter sets
  // are computed once per degree and, with a cache directory, reused across
  // invocations.
  class Session {
   public:
    Session(Options const& o, std::ostream& err)
        : _enumerate(EnumerateOptions{8, o.force_scale, std::max(1u, o.jobs)}),
          _err(err) {
      if (auto dir = resolve_cache_dir(
              o.cache_dir.empty() ? std::nullopt
                                  : std::optional<std::string>(o.cache_dir))) {
        _cache.emplace(*dir, [this](std::string const& w) {
          _err << "warning: " << w << '\n';
        });
      }
    }

    FamilySet family(FamilyId const& id, std::size_t n, Method method) {
      if (!_cache) {
        return _enumerate(id, n, method);
      }
      auto const key = family_cache_key(id, n, method);
      if (auto payload = _cache->load(key)) {
        try {
          std::vector<Transformation> elems;
          for (auto const& lit : *payload) {
            elems.push_back(parse_transformation(lit.get<std::string>()));
          }
          return FamilySet(id, n, std::move(elems));
        } catch (std::exception const&) {
          _err << "warning: CorruptCache: unreadable payload for " << key
               << ", recomputing\n";
        }
      }
      auto fs = _enumerate(id, n, method);
      _cache->store(key, literals(fs.elements()));
      return fs;
    }

    RankCertificate certificate(FamilySet const&      target,
                                Mode                  mode,
                                MinRankOptions const& opts) {
      std::string key;
      if (_cache) {
        key = "rank-" + opts.label + "-n" + std::to_string(target.degree())
              + "-" + mode.to_string() + "-b" + std::to_string(opts.budget);
        if (auto payload = _cache->load(key)) {
          try {
            auto cert = certificate_from_json(*payload);
            // Cheap consistency check before trusting the stored answer.
            if (generates(cert.generators, target, cert.mode)) {
              attach_factorizations(cert, target);
              return cert;
            }
          } catch (std::exception const&) {
          }
          _err << "warning: CorruptCache: rejected certificate " << key
               << ", recomputing\n";
        }
      }
      auto cert = min_rank(target, mode, opts);
      if (_cache) {
        _cache->store(key, to_json(cert));
      }
      attach_factorizations(cert, target);
      return cert;
    }

   private:
    FamilyEnumerator     _enumerate;
    std::optional<Cache> _cache;
    std::ostream&        _err;
  };

  ////////////////////////////////////////////////////////////////////////
  // Report output
  ////////////////////////////////////////////////////////////////////////

  inline std::string row_family(VerificationRow const& r) {
    return r.p ? r.family + ":" + std::to_string(*r.p) : r.family;
  }

  inline std::string csv_quote(std::string const& s) {
    std::string out = "\"";
    for (char c : s) {
      out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
  }

  inline void sort_rows(std::vector<VerificationRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](auto const& a, auto const& b) {
      return std::tie(a.family, a.n, a.p) < std::tie(b.family, b.n, b.p);
    });
  }

  inline void write_report(Report const&      rep,
                           std::string const& format,
                           std::ostream&      out) {
    if (format == "json") {
      out << to_json(rep).dump(2) << '\n';
      return;
    }
    auto opt = [](auto const& v) {
      return v ? std::to_string(*v) : std::string("-");
    };
    auto match = [](std::optional<bool> const& m) {
      return m ? std::string(*m ? "true" : "false") : std::string("-");
    };
    if (format == "csv") {
      out << "n,family,p,computed,claimed,source,match,inconclusive,claim,note\n";
      for (auto const& r : rep.rows) {
        out << r.n << ',' << r.family << ',' << (r.p ? std::to_string(*r.p) : "")
            << ',' << r.computed << ','
            << (r.claimed ? std::to_string(*r.claimed) : "") << ','
            << to_string(r.source) << ','
            << (r.match ? (*r.match ? "true" : "false") : "") << ','
            << (r.inconclusive ? "true" : "false") << ',' << csv_quote(r.claim)
            << ',' << csv_quote(r.note) << '\n';
      }
      return;
    }
    for (auto const& r : rep.rows) {
      out << row_family(r) << " n=" << r.n << " computed=" << r.computed
          << " claimed=" << opt(r.claimed) << " source=" << to_string(r.source)
          << " match=" << match(r.match);
      if (r.inconclusive) {
        out << " inconclusive bounds=[" << opt(r.lower_bound) << ','
            << opt(r.upper_bound) << ']';
      }
      if (!r.claim.empty()) {
        out << " claim=\"" << r.claim << '"';
      }
      if (!r.note.empty()) {
        out << " note=\"" << r.note << '"';
      }
      out << '\n';
    }
    for (auto const& c : rep.certificates) {
      out << "certificate " << c.target << " n=" << c.n << " " << c.mode.to_string()
          << " size=" << c.size << " exhaustive_below="
          << (c.exhaustive_below ? "true" : "false")
          << " subsets_tested=" << c.subsets_tested << " generators:";
      for (auto const& g : c.generators) {
        out << ' ' << g;
      }
      out << '\n';
    }
    for (auto const& note : rep.notes) {
      out << "note: " << note << '\n';
    }
  }

  inline int exit_code(Report const& rep) {
    bool inconclusive = false;
    for (auto const& r : rep.rows) {
      if (r.match && !*r.match) {
        return kExitMismatch;
      }
      inconclusive = inconclusive || r.inconclusive;
    }
    return inconclusive ? kExitInconclusive : kExitOk;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sweeps
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<VerificationRow> count_rows(Session&        session,
                                                 Options const&  o,
                                                 Range           range) {
    auto const methods = methods_for(o.method.empty() ? "filter" : o.method);
    std::vector<VerificationRow> rows;
    for (auto const& item : split_csv(o.families)) {
      auto const sweep = parse_sweep(item);
      for (std::size_t n = range.lo; n <= range.hi; ++n) {
        for (auto const& spec : expand(sweep, n)) {
          auto const id = parse_family_spec(spec);
          if (id.p && static_cast<std::size_t>(*id.p) > n) {
            continue;
          }
          auto const set = session.family(id, n, methods.front());
          VerificationRow row;
          row.n        = n;
          row.family   = std::string(tag_name(id.tag));
          row.p        = id.p;
          row.computed = static_cast<long long>(set.size());
          row.set_claim(count_claim(id, n));
          if (id.tag == FamilyTag::e) {
            auto const printed = printed_e_count(static_cast<long long>(n),
                                                 *id.p);
            row.note = "printed formula n-p-1 gives " + std::to_string(printed)
                       + (printed == row.computed ? "" : ", a typo for n-p+1");
          }
          if (methods.size() > 1) {
            bool const constructible = id.tag != FamilyTag::ct
                                       && id.tag != FamilyTag::oct
                                       && id.tag != FamilyTag::orct;
            if (constructible) {
              auto const other = session.family(id, n, Method::construct);
              if (!(other == set)) {
                row.match = false;
                row.note += (row.note.empty() ? "" : "; ")
                            + std::string("filter and construct disagree (")
                            + std::to_string(other.size()) + " constructed)";
              } else if (!row.match) {
                row.note += (row.note.empty() ? "" : "; ")
                            + std::string("filter and construct agree");
              }
            }
          }
          if (!row.claimed && row.note.empty()) {
            row.note = "computed, no claim";
          }
          rows.push_back(std::move(row));
        }
      }
    }
    sort_rows(rows);
    return rows;
  }

  inline void rank_rows(Session&        session,
                        Options const&  o,
                        Range           range,
                        Report&         rep) {
    auto const methods = methods_for(o.method.empty() ? "construct" : o.method);
    std::vector<std::pair<VerificationRow, RankCertificate>> cells;
    for (auto const& item : split_csv(o.families)) {
      auto const sweep = parse_sweep(item);
      for (std::size_t n = range.lo; n <= range.hi; ++n) {
        for (auto const& text : expand(sweep, n)) {
          auto const spec = parse_rank_spec(text);
          if (spec.p && (*spec.p < 1 || static_cast<std::size_t>(*spec.p) > n)) {
            continue;
          }
          auto const [id, mode] = rank_family(spec);
          auto const target     = session.family(id, n, methods.front());
          std::string disagreement;
          if (methods.size() > 1 && !(session.family(id, n, methods[1]) == target)) {
            disagreement = "filter and construct targets disagree";
          }
          MinRankOptions mo;
          mo.budget      = o.budget;
          mo.jobs        = std::max(1u, o.jobs);
          mo.label       = spec.to_string();
          auto const cert = session.certificate(target, mode, mo);

          VerificationRow row;
          row.n        = n;
          row.family   = std::string(text.substr(0, text.find(':')));
          row.p        = spec.p;
          row.computed = static_cast<long long>(cert.size);
          auto const rc = rank_claim(spec, n);
          row.set_claim(rc.claim);
          row.note = rc.note;
          if (!cert.exact()) {
            row.inconclusive = true;
            row.lower_bound  = static_cast<long long>(cert.lower_bound);
            row.upper_bound  = static_cast<long long>(cert.upper_bound);
            row.match.reset();
            row.note = "budget exhausted after "
                       + std::to_string(cert.subsets_tested) + " subsets";
          }
          if (!disagreement.empty()) {
            row.match = false;
            row.note += (row.note.empty() ? "" : "; ") + disagreement;
          }
          cells.emplace_back(std::move(row), cert);
        }
      }
    }
    std::stable_sort(cells.begin(), cells.end(), [](auto const& a, auto const& b) {
      return std::tie(a.first.family, a.first.n, a.first.p)
             < std::tie(b.first.family, b.first.n, b.first.p);
    });
    for (auto& [row, cert] : cells) {
      rep.rows.push_back(std::move(row));
      rep.certificates.push_back(std::move(cert));
    }
  }

  // Closure, regularity, L-unipotency and the image/kernel description of
  // Green's R and L on the regular and idempotent families.
  inline std::vector<VerificationRow> structure_rows(Session&        session,
                                                     Range           range,
                                                     nlohmann::json& detail) {
    std::vector<VerificationRow> rows;
    auto add = [&](std::size_t n, FamilyTag tag, bool value,
                   std::string const& statement, std::string note = {}) {
      VerificationRow row;
      row.n        = n;
      row.family   = std::string(tag_name(tag));
      row.computed = value ? 1 : 0;
      row.set_claim(Claim{1, ClaimSource::theorem, statement});
      row.note = std::move(note);
      rows.push_back(std::move(row));
    };
    for (std::size_t n = std::max<std::size_t>(range.lo, 2); n <= range.hi; ++n) {
      for (auto tag : {FamilyTag::reg_oct, FamilyTag::reg_orct,
                       FamilyTag::e_orct}) {
        auto const set = session.family({tag, {}}, n, Method::filter);
        auto const rep = structure_report(set);
        auto j         = to_json(rep);
        j["family"]    = tag_name(tag);
        j["n"]         = n;
        detail.push_back(j);
        add(n, tag, rep.closed, "closed under composition");
        if (tag == FamilyTag::reg_orct) {
          add(n, tag, rep.l_unipotent,
              "every L-class contains a unique idempotent",
              rep.kernel_classes_unipotent
                  ? ""
                  : "kernel classes are not unipotent; L-classes are the "
                    "image classes");
        }
        if (tag == FamilyTag::reg_orct || tag == FamilyTag::e_orct) {
          auto const abs = greens_abstract(set);
          auto const inv = greens_by_invariants(set);
          bool const r_img = abs.r_classes == inv.r_classes;
          bool const l_ker = abs.l_classes == inv.l_classes;
          bool const r_ker = abs.r_classes == inv.l_classes;
          bool const l_img = abs.l_classes == inv.r_classes;
          add(n, tag, r_img, "abstract R-classes are the image classes",
              r_ker ? "abstract R-classes are the kernel classes" : "");
          add(n, tag, l_ker, "abstract L-classes are the kernel classes",
              l_img ? "abstract L-classes are the image classes" : "");
        }
      }
    }
    return rows;
  }

  ////////////////////////////////////////////////////////////////////////
  // factorize
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<Transformation> literal_list(std::string const& text) {
    std::vector<Transformation> out;
    std::size_t                 pos = 0;
    while ((pos = text.find('[', pos)) != std::string::npos) {
      auto const close = text.find(']', pos);
      if (close == std::string::npos) {
        throw Error(ErrorCode::syntax_error, "unterminated literal in --gens");
      }
      out.push_back(parse_transformation(text.substr(pos, close - pos + 1)));
      pos = close + 1;
    }
    return out;
  }

  // corners, genset-q, genset-w, a list of literals, or a family spec with
  // an optional trailing ":<n>".
  inline std::vector<Transformation> resolve_gens(Session&           session,
                                                  std::string const& text,
                                                  std::size_t        n,
                                                  std::optional<int> p) {
    auto need_p = [&]() -> std::size_t {
      if (!p) {
        throw Error(ErrorCode::bad_parameter, "--gens " + text + " needs --p");
      }
      return static_cast<std::size_t>(*p);
    };
    if (text == "corners") {
      std::vector<Transformation> v{corner(n, need_p(), Corner::eta),
                                    corner(n, need_p(), Corner::tau)};
      std::sort(v.begin(), v.end());
      return v;
    }
    if (text == "genset-q") {
      return corner_genset(n, need_p(), GensetVariant::Q);
    }
    if (text == "genset-w") {
      return corner_genset(n, need_p(), GensetVariant::W);
    }
    if (text.find('[') != std::string::npos) {
      return literal_list(text);
    }
    auto        spec   = text;
    std::size_t degree = n;
    auto const  first  = text.find(':');
    auto const  head   = text.substr(0, first);
    auto const  colons = std::count(text.begin(), text.end(), ':');
    bool const  param  = std::any_of(
        std::begin(detail::kTagNames), std::end(detail::kTagNames),
        [&](auto const& tn) { return tn.name == head && takes_parameter(tn.tag); });
    if (colons == (param ? 2 : 1)) {
      auto const last = text.rfind(':');
      auto const d    = detail::parse_int(text.substr(last + 1));
      if (!d || *d < 1) {
        throw Error(ErrorCode::syntax_error, "bad degree in --gens " + text);
      }
      degree = static_cast<std::size_t>(*d);
      spec   = text.substr(0, last);
    }
    if (degree != n) {
      throw Error(ErrorCode::degree_mismatch,
                  "generators of degree " + std::to_string(degree)
                      + " for an element of degree " + std::to_string(n));
    }
    auto const fs = session.family(parse_family_spec(spec), degree, Method::filter);
    return fs.elements();
  }

  ////////////////////////////////////////////////////////////////////////
  // Entry point
  ////////////////////////////////////////////////////////////////////////

  inline int run(std::vector<std::string> const& args,
                 std::ostream&                   out,
                 std::ostream&                   err) {
    CLI::App app{"Enumerate and verify semigroups of full contractions of a "
                 "finite chain",
                 "contractions"};
    app.require_subcommand(1);
    Options o;

    auto formats = CLI::IsMember({"lines", "csv", "json"});
    auto methods = CLI::IsMember({"filter", "construct", "both"});
    auto common  = [&](CLI::App* sub) {
      sub->add_option("--format", o.format, "lines, csv or json")
          ->check(formats);
      sub->add_option("--jobs", o.jobs, "worker threads")
          ->check(CLI::Range(1u, 256u));
      sub->add_option("--cache-dir", o.cache_dir,
                      std::string("cache directory (also $") + kCacheDirEnv
                          + ")");
      sub->add_flag("--force-scale", o.force_scale,
                    "allow filter enumeration above n = 8");
    };

    auto* count_cmd = app.add_subcommand("count", "cardinalities against closed forms");
    count_cmd->add_option("--n", o.n, "degree range A..B (default 1..7)");
    count_cmd->add_option("--families", o.families, "comma-separated family specs")
        ->required();
    count_cmd->add_option("--method", o.method, "filter, construct or both")
        ->check(methods);
    common(count_cmd);

    auto* rank_cmd = app.add_subcommand("rank", "exact minimum generating sets");
    rank_cmd->add_option("--n", o.n, "degree range A..B (default 1..6)");
    rank_cmd->add_option("--families", o.families,
                     "l:<p>, m:<p>, reg-oct, reg-orct, e-orct, q:<p>, w:<p>")
        ->required();
    rank_cmd->add_option("--method", o.method, "filter, construct or both")
        ->check(methods);
    rank_cmd->add_option("--budget", o.budget, "closure evaluations per target");
    common(rank_cmd);

    auto* enumerate_cmd = app.add_subcommand("enumerate", "list a family");
    enumerate_cmd->add_option("--family", o.family, "family spec")->required();
    enumerate_cmd->add_option("--n", o.n, "degree")->required();
    enumerate_cmd->add_option("--method", o.method, "filter, construct or both")
        ->check(methods);
    common(enumerate_cmd);

    auto* factorize_cmd
        = app.add_subcommand("factorize", "shortest word for an element");
    factorize_cmd->add_option("--element", o.element, "transformation literal")
        ->required();
    factorize_cmd->add_option("--gens", o.gens,
                              "corners, genset-q, genset-w, literals, or a "
                              "family spec with optional :<n>")
        ->required();
    factorize_cmd->add_option("--n", o.n, "degree (default: from the element)");
    factorize_cmd->add_option("--p", o.p, "rank parameter");
    factorize_cmd->add_option("--mode", o.mode, "plain or rees")
        ->check(CLI::IsMember({"plain", "rees"}));
    common(factorize_cmd);

    auto* greens_cmd = app.add_subcommand("greens", "Green's classes of a family");
    greens_cmd->add_option("--family", o.family, "family spec")->required();
    greens_cmd->add_option("--n", o.n, "degree")->required();
    greens_cmd->add_option("--method", o.method, "filter or construct")
        ->check(methods);
    greens_cmd->add_option("--relation", o.relation,
                           "abstract (principal ideals) or invariants "
                           "(image and kernel)")
        ->check(CLI::IsMember({"abstract", "invariants"}));
    common(greens_cmd);

    auto* verify = app.add_subcommand(
        "verify", "counts, ranks and structural checks in one sweep");
    verify->add_option("--n", o.n,
                       "degree range (default 1..7 counts, 1..6 ranks and "
                       "2..6 structure)");
    verify->add_option("--families", o.families,
                       "rank families (default l:*,m:*,reg-oct,reg-orct,"
                       "e-orct,q:*,w:*)");
    verify->add_option("--budget", o.budget, "closure evaluations per target");
    common(verify);

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      auto const code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    try {
      Session session(o, err);
      Report  rep;

      if (count_cmd->parsed()) {
        rep.rows = count_rows(session, o,
                              parse_range(o.n.empty() ? "1..7" : o.n));
      } else if (rank_cmd->parsed()) {
        rank_rows(session, o, parse_range(o.n.empty() ? "1..6" : o.n), rep);
      } else if (verify->parsed()) {
        Options counts = o;
        counts.families = "reg-oct,reg-orct,e-oct,e-orct,k:*,e:*";
        counts.method   = "both";
        auto rows = count_rows(session, counts,
                               parse_range(o.n.empty() ? "1..7" : o.n));
        Options ranks = o;
        if (ranks.families.empty()) {
          ranks.families = "l:*,m:*,reg-oct,reg-orct,e-orct,q:*,w:*";
        }
        rank_rows(session, ranks, parse_range(o.n.empty() ? "1..6" : o.n), rep);
        rows.insert(rows.end(), rep.rows.begin(), rep.rows.end());
        auto structure = nlohmann::json::array();
        auto srows = structure_rows(
            session, parse_range(o.n.empty() ? "2..6" : o.n), structure);
        rows.insert(rows.end(), srows.begin(), srows.end());
        rep.rows      = std::move(rows);
        rep.structure = std::move(structure);
      } else if (enumerate_cmd->parsed()) {
        auto const n       = parse_range(o.n).lo;
        auto const id      = parse_family_spec(o.family);
        auto const ms      = methods_for(o.method.empty() ? "filter" : o.method);
        auto const set     = session.family(id, n, ms.front());
        if (ms.size() > 1 && !(session.family(id, n, ms[1]) == set)) {
          err << "error: filter and construct enumerations of " << o.family
              << " differ\n";
          return kExitMismatch;
        }
        if (o.format == "json") {
          out << literals(set.elements()).dump() << '\n';
        } else if (o.format == "csv") {
          out << "n,family,index,literal,rank,flags\n";
          for (std::size_t i = 0; i < set.size(); ++i) {
            auto const f = classify(set[i]);
            std::string flags;
            auto flag = [&](bool on, char const* name) {
              if (on) {
                flags += (flags.empty() ? "" : "|") + std::string(name);
              }
            };
            flag(f.order_preserving, "order_preserving");
            flag(f.order_reversing, "order_reversing");
            flag(f.contraction, "contraction");
            flag(f.isometry, "isometry");
            flag(f.idempotent, "idempotent");
            out << n << ',' << o.family << ',' << i << ','
                << csv_quote(format_transformation(set[i])) << ','
                << rank(set[i]) << ',' << flags << '\n';
          }
        } else {
          for (auto const& t : set) {
            out << t << '\n';
          }
        }
        return kExitOk;
      } else if (factorize_cmd->parsed()) {
        auto const element = parse_transformation(o.element);
        std::size_t n      = element.degree();
        if (!o.n.empty()) {
          n = parse_range(o.n).lo;
          if (n != element.degree()) {
            throw Error(ErrorCode::degree_mismatch,
                        "element has degree " + std::to_string(element.degree())
                            + ", --n is " + std::to_string(n));
          }
        }
        auto const gens = resolve_gens(session, o.gens, n, o.p);
        for (auto const& g : gens) {
          if (g.degree() != n) {
            throw Error(ErrorCode::degree_mismatch,
                        "generator " + format_transformation(g)
                            + " has the wrong degree");
          }
        }
        Mode mode = plain_mode;
        if (o.mode == "rees") {
          if (!o.p) {
            throw Error(ErrorCode::bad_parameter, "--mode rees needs --p");
          }
          mode = rees_mode(static_cast<std::size_t>(*o.p));
        }
        auto const word = factorize(element, gens, mode);
        if (o.format == "json") {
          nlohmann::json j{{"element", format_transformation(element)},
                           {"generators", literals(gens)},
                           {"mode", mode.to_string()}};
          j["word"] = word ? nlohmann::json(word->letters) : nlohmann::json();
          out << j.dump(2) << '\n';
        } else if (!word) {
          out << "unreachable\n";
        } else {
          for (std::size_t i = 0; i < word->letters.size(); ++i) {
            out << (i ? " · " : "") << gens[word->letters[i]];
          }
          out << '\n';
        }
        return kExitOk;
      } else if (greens_cmd->parsed()) {
        auto const n   = parse_range(o.n).lo;
        auto const id  = parse_family_spec(o.family);
        auto const set = session.family(
            id, n, methods_for(o.method.empty() ? "filter" : o.method).front());
        auto const g = o.relation == "abstract" ? greens_abstract(set)
                                                : greens_by_invariants(set);
        if (o.format == "json") {
          auto j        = to_json(g);
          j["relation"] = o.relation;
          j["structure"] = to_json(structure_report(set));
          out << j.dump(2) << '\n';
          return kExitOk;
        }
        out << o.family << " n=" << n << " size=" << set.size()
            << " relation=" << o.relation << '\n';
        auto section = [&](char const* name, Partition const& p) {
          out << name << "-classes: " << p.size() << '\n';
          for (auto const& cls : p) {
            out << ' ';
            for (auto i : cls) {
              out << ' ' << set[i];
            }
            out << '\n';
          }
        };
        section("R", g.r_classes);
        section("L", g.l_classes);
        section("H", g.h_classes);
        section("D", g.d_classes);
        return kExitOk;
      }

      write_report(rep, o.format, out);
      return exit_code(rep);
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }

}  // namespace contractions::cli

#endif  // CONTRACTIONS_TOOLS_CLI_APP_HPP_
