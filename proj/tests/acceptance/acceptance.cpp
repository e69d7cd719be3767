// Acceptance checks, one PASS/FAIL line per criterion followed by indented
// detail.  Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "contractions/contractions.hpp"

using namespace contractions;

namespace {

  struct Outcome {
    bool                     pass = true;
    std::vector<std::string> detail;

    void check(bool ok, std::string const& what) {
      if (!ok) {
        pass = false;
        detail.push_back("failed: " + what);
      }
    }
    void note(std::string const& what) {
      detail.push_back(what);
    }
  };

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  std::string fmt(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2fs", s);
    return buf;
  }

  FamilySet fam(FamilyTag tag, std::size_t n, std::optional<int> p = {},
                Method m = Method::filter) {
    return enumerate(FamilyId{tag, p}, n, m);
  }

  ////////////////////////////////////////////////////////////////////////

  Outcome counting_reg_oct() {
    Outcome         o;
    auto const      t0 = Clock::now();
    long long const expect[] = {1, 3, 8, 18, 35, 61, 98};
    for (std::size_t n = 1; n <= 7; ++n) {
      auto const size    = static_cast<long long>(fam(FamilyTag::reg_oct, n).size());
      auto const formula = (static_cast<long long>(n) * (n - 1) * (2 * n - 1)
                            + 6 * static_cast<long long>(n))
                           / 6;
      o.check(size == formula && size == expect[n - 1],
              "n=" + std::to_string(n) + " enumerated " + std::to_string(size)
                  + ", formula " + std::to_string(formula));
    }
    auto const dt = seconds_since(t0);
    o.check(dt < 60, "runtime " + fmt(dt) + " over 60s");
    o.note("n=1..7 in " + fmt(dt));
    return o;
  }

  Outcome counting_reg_orct_e() {
    Outcome    o;
    auto const t0 = Clock::now();
    for (long long n = 1; n <= 7; ++n) {
      auto const oct  = static_cast<long long>(fam(FamilyTag::reg_oct, n).size());
      auto const orct = static_cast<long long>(fam(FamilyTag::reg_orct, n).size());
      auto const e    = static_cast<long long>(fam(FamilyTag::e_orct, n).size());
      o.check(orct == 2 * oct - n, "n=" + std::to_string(n) + " |Reg(ORCT)| "
                                       + std::to_string(orct));
      o.check(e == n * (n + 1) / 2,
              "n=" + std::to_string(n) + " |E(ORCT)| " + std::to_string(e));
    }
    auto const dt = seconds_since(t0);
    o.check(dt < 60, "runtime " + fmt(dt) + " over 60s");
    o.note("n=1..7 in " + fmt(dt));
    return o;
  }

  Outcome grid_counts() {
    Outcome    o;
    auto const t0 = Clock::now();
    for (std::size_t n = 1; n <= 7; ++n) {
      for (int p = 1; p <= static_cast<int>(n); ++p) {
        auto const f = fam(FamilyTag::k, n, p, Method::filter);
        auto const c = fam(FamilyTag::k, n, p, Method::construct);
        auto const expect = p == 1 ? n : (n - p + 1) * (n - p + 1);
        auto const cell   = "n=" + std::to_string(n) + " p=" + std::to_string(p);
        o.check(f == c, cell + " filter and construct differ");
        o.check(f.size() == expect, cell + " size " + std::to_string(f.size()));
      }
    }
    auto const dt = seconds_since(t0);
    o.check(dt < 60, "runtime " + fmt(dt));
    o.note("n=1..7, all p, in " + fmt(dt));
    return o;
  }

  Outcome idempotent_anomaly() {
    Outcome o;
    for (std::size_t n = 1; n <= 7; ++n) {
      for (int p = 1; p <= static_cast<int>(n); ++p) {
        auto const size = static_cast<long long>(fam(FamilyTag::e, n, p).size());
        o.check(size == static_cast<long long>(n) - p + 1,
                "n=" + std::to_string(n) + " p=" + std::to_string(p) + " |E_p| "
                    + std::to_string(size));
      }
    }
    // The verify report annotates every E_p row with the printed value.
    std::ostringstream out, err;
    int const          code = cli::run({"verify", "--n", "1..7", "--families",
                                        "reg-oct", "--format", "json"},
                                       out, err);
    o.check(code != 2, "verify failed to run: " + err.str());
    std::size_t flagged = 0, rows = 0;
    if (code != 2) {
      auto const report = nlohmann::json::parse(out.str());
      for (auto const& row : report["rows"]) {
        if (row["family"] == "e") {
          ++rows;
          auto const note = row.value("note", std::string());
          flagged += note.find("n-p-1") != std::string::npos
                     && note.find("typo") != std::string::npos;
        }
      }
    }
    o.check(rows == 28 && flagged == rows,
            "verify flagged " + std::to_string(flagged) + " of "
                + std::to_string(rows) + " E_p rows");
    o.note("verify flags the printed n-p-1 on " + std::to_string(flagged)
           + " E_p rows");
    return o;
  }

  Outcome greens_ideals_vs_invariants() {
    Outcome    o;
    auto const t0 = Clock::now();
    for (std::size_t n = 2; n <= 6; ++n) {
      for (auto tag : {FamilyTag::reg_orct, FamilyTag::e_orct}) {
        auto const s    = fam(tag, n);
        auto const abs  = greens_abstract(s);
        auto const inv  = greens_by_invariants(s);
        auto const cell = std::string(tag_name(tag)) + " n=" + std::to_string(n);
        o.check(abs.r_classes == inv.r_classes,
                cell + ": abstract R-classes are not the image classes"
                    + (abs.r_classes == inv.l_classes
                           ? " (they are the kernel classes)"
                           : ""));
        o.check(abs.l_classes == inv.l_classes,
                cell + ": abstract L-classes are not the kernel classes"
                    + (abs.l_classes == inv.r_classes
                           ? " (they are the image classes)"
                           : ""));
      }
    }
    auto const dt = seconds_since(t0);
    o.check(dt < 300, "runtime " + fmt(dt));
    o.note("n=2..6 in " + fmt(dt));
    return o;
  }

  Outcome structure_claims() {
    Outcome o;
    for (std::size_t n = 2; n <= 6; ++n) {
      for (auto tag : {FamilyTag::reg_oct, FamilyTag::reg_orct, FamilyTag::e_orct}) {
        auto const rep  = structure_report(fam(tag, n));
        auto const cell = std::string(tag_name(tag)) + " n=" + std::to_string(n);
        o.check(rep.closed, cell + " not closed");
        if (tag == FamilyTag::reg_orct) {
          o.check(rep.l_unipotent, cell + " not L-unipotent");
          if (!rep.kernel_classes_unipotent && n == 6) {
            o.note("kernel classes are not unipotent (constants share a kernel); "
                   "L-classes S^1a are the image classes and are unipotent");
          }
        }
      }
    }
    return o;
  }

  // A set is irredundant when dropping any one element loses generation; by
  // monotonicity of closure no proper subset then generates.
  bool irredundant(std::vector<Transformation> const& gens,
                   FamilySet const&                   target,
                   Mode                               mode,
                   std::vector<Transformation>*       redundant) {
    bool ok = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto fewer = gens;
      fewer.erase(fewer.begin() + i);
      if (!fewer.empty() && generates(fewer, target, mode)) {
        ok = false;
        if (redundant) {
          redundant->push_back(gens[i]);
        }
      }
    }
    return ok;
  }

  Outcome explicit_generating_sets() {
    Outcome    o;
    auto const t0 = Clock::now();
    for (std::size_t n = 4; n <= 6; ++n) {
      for (std::size_t p = 2; p + 1 <= n; ++p) {
        auto const cell = "n=" + std::to_string(n) + " p=" + std::to_string(p);
        auto const k = fam(FamilyTag::k, n, int(p), Method::construct);
        auto const j = fam(FamilyTag::j, n, int(p), Method::construct);
        auto const q = corner_genset(n, p, GensetVariant::Q);
        auto const w = corner_genset(n, p, GensetVariant::W);
        o.check(generates(q, k, rees_mode(p)), cell + " Q does not generate K_p");
        o.check(irredundant(q, k, rees_mode(p), nullptr),
                cell + " Q has a generating proper subset");
        o.check(generates(w, j, rees_mode(p)), cell + " W does not generate J_p");
        std::vector<Transformation> redundant;
        if (!irredundant(w, j, rees_mode(p), &redundant)) {
          std::string list;
          for (auto const& t : redundant) {
            list += " " + format_transformation(t);
          }
          o.check(false, cell + " W has a generating proper subset; removable:"
                             + list);
        }
      }
    }
    auto const dt = seconds_since(t0);
    o.check(dt < 600, "runtime " + fmt(dt));
    o.note("n=4..6 in " + fmt(dt));
    return o;
  }

  Outcome inclusions() {
    Outcome o;
    for (std::size_t n = 4; n <= 6; ++n) {
      for (std::size_t p = 1; p + 2 <= n; ++p) {
        auto const cell = "n=" + std::to_string(n) + " p=" + std::to_string(p);
        o.check(inclusion_check(n, p, InclusionVariant::K), cell + " K");
        o.check(inclusion_check(n, p, InclusionVariant::J), cell + " J");
      }
    }
    return o;
  }

  Outcome claimed_ranks() {
    Outcome o;
    for (std::size_t n = 4; n <= 6; ++n) {
      auto const t0 = Clock::now();
      struct Target {
        std::string label;
        FamilySet   set;
        std::size_t claimed;
      };
      std::vector<Target> targets;
      for (int p = 2; p + 1 <= int(n); ++p) {
        targets.push_back({"L(" + std::to_string(n) + "," + std::to_string(p) + ")",
                           fam(FamilyTag::l, n, p, Method::construct),
                           2 * (n - p)});
      }
      for (int p = 3; p + 1 <= int(n); ++p) {
        targets.push_back({"M(" + std::to_string(n) + "," + std::to_string(p) + ")",
                           fam(FamilyTag::m, n, p, Method::construct),
                           2 * (n - p) + 1});
      }
      targets.push_back({"Reg(OCT_" + std::to_string(n) + ")",
                         fam(FamilyTag::reg_oct, n), 3});
      targets.push_back({"Reg(ORCT_" + std::to_string(n) + ")",
                         fam(FamilyTag::reg_orct, n), 4});
      for (auto const& t : targets) {
        auto const cert = min_rank(t.set, plain_mode);
        bool const ok   = cert.exact() && cert.exhaustive_below
                        && cert.size == t.claimed && revalidate(cert, t.set);
        o.check(ok, t.label + ": computed " + std::to_string(cert.size)
                        + ", claimed " + std::to_string(t.claimed)
                        + (cert.exact() ? "" : " (inconclusive)"));
        if (ok) {
          o.note(t.label + ": " + std::to_string(cert.size) + " as claimed");
        }
      }
      auto const dt    = seconds_since(t0);
      double const cap = n == 6 ? 1800 : 60;
      o.check(dt < cap, "n=" + std::to_string(n) + " runtime " + fmt(dt));
      o.note("n=" + std::to_string(n) + " in " + fmt(dt));
    }
    return o;
  }

  Outcome idempotent_rank() {
    Outcome o;
    for (std::size_t n = 4; n <= 6; ++n) {
      auto const s    = fam(FamilyTag::e_orct, n);
      auto const cert = min_rank(s, plain_mode);
      o.check(cert.exact() && cert.exhaustive_below,
              "n=" + std::to_string(n) + " search inconclusive");
      o.check(revalidate(cert, s),
              "n=" + std::to_string(n) + " certificate does not revalidate");
      o.note("rank E(ORCT_" + std::to_string(n) + ") computed "
             + std::to_string(cert.size) + ", reference value 3 (unproved)");
    }
    return o;
  }

  Outcome property_suites() {
    Outcome         o;
    std::mt19937_64 rng(0x5eed'c0ffeeULL);
    constexpr int   kSamples = 10'000;

    auto sample = [&](FamilySet const& s) -> Transformation const& {
      return s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)];
    };
    auto fixes_image = [](Transformation const& t) {
      for (int v : image(t)) {
        if (t(v) != v) {
          return false;
        }
      }
      return true;
    };

    auto const ct6   = fam(FamilyTag::ct, 6);
    auto const orct6 = fam(FamilyTag::orct, 6);
    auto const reg5  = fam(FamilyTag::reg_orct, 5);
    bool assoc = true, closed = true, mono = true, idem = true, inv = true,
         clos = true;
    for (int i = 0; i < kSamples; ++i) {
      auto const& a = sample(ct6);
      auto const& b = sample(ct6);
      auto const& c = sample(ct6);
      assoc  = assoc && (a * b) * c == a * (b * c);
      closed = closed && ct6.contains(a * b);
      mono   = mono && rank(a * b) <= std::min(rank(a), rank(b));
      idem   = idem && ((a * a == a) == fixes_image(a));
      auto const& r = sample(orct6);
      inv    = inv && star(star(r)) == r && orct6.contains(star(r));
      std::vector<Transformation> gens{sample(reg5), sample(reg5)};
      auto const once = closure(gens);
      clos = clos && closure(once.elements()) == once;
    }
    for (std::size_t n = 1; n <= 4; ++n) {
      auto const ct = fam(FamilyTag::ct, n);
      auto const rs = fam(FamilyTag::orct, n);
      for (auto const& a : ct) {
        idem = idem && ((a * a == a) == fixes_image(a));
        for (auto const& b : ct) {
          closed = closed && ct.contains(a * b);
          mono   = mono && rank(a * b) <= std::min(rank(a), rank(b));
          for (auto const& c : ct) {
            assoc = assoc && (a * b) * c == a * (b * c);
          }
        }
      }
      for (auto const& a : rs) {
        inv = inv && star(star(a)) == a && rs.contains(star(a));
        for (auto const& b : rs) {
          std::vector<Transformation> gens{a, b};
          auto const once = closure(gens);
          clos = clos && closure(once.elements()) == once;
        }
      }
    }
    o.check(assoc, "associativity");
    o.check(closed, "contraction closure");
    o.check(mono, "rank monotonicity");
    o.check(idem, "idempotency criterion");
    o.check(inv, "star involution");
    o.check(clos, "closure idempotence");
    o.note(std::to_string(kSamples) + " draws per suite plus exhaustive n <= 4");
    return o;
  }

  Outcome corner_identities() {
    Outcome o;
    for (std::size_t n = 4; n <= 6; ++n) {
      for (std::size_t p = 2; p + 1 <= n; ++p) {
        auto const cell  = "n=" + std::to_string(n) + " p=" + std::to_string(p);
        auto const k     = fam(FamilyTag::k, n, int(p), Method::construct);
        auto const eta   = corner(n, p, Corner::eta);
        auto const delta = corner(n, p, Corner::delta);
        auto const tau   = corner(n, p, Corner::tau);
        auto const r_eta = class_of(eta, k, ClassRelation::R);
        auto const l_del = class_of(delta, k, ClassRelation::L);
        o.check(r_eta.contains(delta) && l_del.contains(delta),
                cell + " delta outside R_eta or L_delta");
        o.check(tau * eta == delta, cell + " tau eta != delta");
        // delta is idempotent, so it is excluded from the rank-drop items.
        for (auto const& a : r_eta) {
          if (a == delta) {
            continue;
          }
          o.check(a * delta == a, cell + " a delta != a for "
                                      + format_transformation(a));
          o.check(rank(delta * a) < p, cell + " rank(delta a) for "
                                           + format_transformation(a));
          for (auto const& b : r_eta) {
            if (b != delta) {
              o.check(rank(a * b) < p, cell + " rank(ab) for "
                                           + format_transformation(a) + ", "
                                           + format_transformation(b));
            }
          }
        }
        for (auto const& a : l_del) {
          if (a == delta) {
            continue;
          }
          o.check(delta * a == a, cell + " delta a != a for "
                                      + format_transformation(a));
          o.check(rank(a * delta) < p, cell + " rank(a delta) for "
                                           + format_transformation(a));
        }
      }
    }
    return o;
  }

}  // namespace

int main() {
  struct Criterion {
    int                      id;
    char const*              name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {1, "counting |Reg(OCT_n)|, n=1..7", counting_reg_oct},
      {2, "counting |Reg(ORCT_n)| and |E(ORCT_n)|, n=1..7", counting_reg_orct_e},
      {3, "grid K_p filter = construct = (n-p+1)^2, n=1..7", grid_counts},
      {4, "|E_p| = n-p+1 and the printed n-p-1 is flagged", idempotent_anomaly},
      {5, "abstract R/L = image/kernel classes, n=2..6", greens_ideals_vs_invariants},
      {6, "closure and L-unipotency, n=2..6", structure_claims},
      {7, "Q and W generate their quotients minimally, n=4..6", explicit_generating_sets},
      {8, "<K_p> in <K_{p+1}>, <J_p> in <J_{p+1}>, n=4..6", inclusions},
      {9, "claimed ranks of L, M, Reg(OCT), Reg(ORCT), n=4..6", claimed_ranks},
      {10, "rank of E(ORCT_n) computed exactly, n=4..6", idempotent_rank},
      {11, "property suites", property_suites},
      {12, "corner-element identities, n=4..6", corner_identities},
  };
  int failures = 0;
  for (auto const& c : criteria) {
    auto const t0 = Clock::now();
    Outcome    o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL")
              << " - " << c.name << " (" << fmt(seconds_since(t0)) << ")\n";
    for (auto const& d : o.detail) {
      std::cout << "    " << d << '\n';
    }
    std::cout.flush();
  }
  std::cout << (failures == 0 ? "all criteria PASS"
                              : std::to_string(failures) + " criteria FAIL")
            << '\n';
  return failures == 0 ? 0 : 1;
}
