#ifndef CONTRACTIONS_REPORT_HPP_
#define CONTRACTIONS_REPORT_HPP_

// Machine-readable records.  Transformations always appear in the literal
// grammar "[i1,...,in]".

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claims.hpp"
#include "families.hpp"
#include "genrank.hpp"
#include "greens.hpp"
#include "transformation.hpp"

namespace contractions {

  inline constexpr char const* kToolVersion   = "1.0.0";
  inline constexpr int         kSchemaVersion = 1;

  struct VerificationRow {
    std::size_t              n = 0;
    std::string              family;
    std::optional<int>       p;
    long long                computed = 0;
    std::optional<long long> claimed;
    ClaimSource              source = ClaimSource::none;
    std::optional<bool>      match;
    std::string              claim;  // statement tested, empty when none
    std::string              note;
    bool                     inconclusive = false;
    std::optional<long long> lower_bound;  // set on inconclusive rows
    std::optional<long long> upper_bound;

    void set_claim(std::optional<Claim> const& c) {
      if (c) {
        claimed = c->value;
        source  = c->source;
        claim   = c->statement;
        match   = computed == c->value;
      } else {
        claimed.reset();
        source = ClaimSource::none;
        claim.clear();
        match.reset();
      }
    }
  };

  inline nlohmann::json literals(std::vector<Transformation> const& v) {
    auto out = nlohmann::json::array();
    for (auto const& t : v) {
      out.push_back(format_transformation(t));
    }
    return out;
  }

  inline nlohmann::json to_json(VerificationRow const& r) {
    nlohmann::json j;
    j["n"]      = r.n;
    j["family"] = r.family;
    if (r.p) {
      j["p"] = *r.p;
    }
    j["computed"] = r.computed;
    j["claimed"]  = r.claimed ? nlohmann::json(*r.claimed) : nlohmann::json();
    j["source"]   = std::string(to_string(r.source));
    j["match"]    = r.match ? nlohmann::json(*r.match) : nlohmann::json();
    if (!r.claim.empty()) {
      j["claim"] = r.claim;
    }
    if (!r.note.empty()) {
      j["note"] = r.note;
    }
    if (r.inconclusive) {
      j["inconclusive"] = true;
      j["lower_bound"]  = r.lower_bound.value_or(0);
      j["upper_bound"]  = r.upper_bound.value_or(0);
    }
    return j;
  }

  inline nlohmann::json to_json(RankCertificate const& c) {
    nlohmann::json j;
    j["target"] = c.target;
    j["n"]      = c.n;
    if (c.p) {
      j["p"] = *c.p;
    }
    j["mode"]             = c.mode.to_string();
    j["size"]             = c.size;
    j["generators"]       = literals(c.generators);
    j["exhaustive_below"] = c.exhaustive_below;
    j["subsets_tested"]   = c.subsets_tested;
    j["budget_exhausted"] = c.budget_exhausted;
    j["lower_bound"]      = c.lower_bound;
    j["upper_bound"]      = c.upper_bound;
    j["indecomposables"]  = c.seed_count;
    if (!c.factorizations.empty()) {
      auto f = nlohmann::json::object();
      for (auto const& [t, w] : c.factorizations) {
        f[format_transformation(t)] = w.letters;
      }
      j["factorizations"] = f;
    }
    return j;
  }

  inline RankCertificate certificate_from_json(nlohmann::json const& j) {
    RankCertificate c;
    c.target = j.at("target").get<std::string>();
    c.n      = j.at("n").get<std::size_t>();
    if (j.contains("p")) {
      c.p = j.at("p").get<int>();
    }
    auto const mode = j.at("mode").get<std::string>();
    if (mode != "plain") {
      if (mode.rfind("rees(", 0) != 0 || mode.back() != ')') {
        throw Error(ErrorCode::syntax_error, "bad certificate mode " + mode);
      }
      c.mode = rees_mode(std::stoul(mode.substr(5, mode.size() - 6)));
    }
    c.size = j.at("size").get<std::size_t>();
    for (auto const& g : j.at("generators")) {
      c.generators.push_back(parse_transformation(g.get<std::string>()));
    }
    c.exhaustive_below = j.at("exhaustive_below").get<bool>();
    c.subsets_tested   = j.at("subsets_tested").get<std::uint64_t>();
    c.budget_exhausted = j.at("budget_exhausted").get<bool>();
    c.lower_bound      = j.value("lower_bound", c.size);
    c.upper_bound      = j.value("upper_bound", c.size);
    c.seed_count       = j.value("indecomposables", std::size_t{0});
    return c;
  }

  inline nlohmann::json to_json(StructureReport const& r) {
    nlohmann::json j;
    j["closed"]                   = r.closed;
    j["all_regular"]              = r.all_regular;
    j["l_unipotent"]              = r.l_unipotent;
    j["idempotent_count"]         = r.idempotent_count;
    j["kernel_classes_unipotent"] = r.kernel_classes_unipotent;
    auto w                        = nlohmann::json::array();
    for (auto const& x : r.witnesses) {
      w.push_back({{"flag", x.flag},
                   {"first", format_transformation(x.first)},
                   {"second", format_transformation(x.second)}});
    }
    j["witnesses"] = w;
    return j;
  }

  inline nlohmann::json to_json(Partition const& p, FamilySet const& base) {
    auto out = nlohmann::json::array();
    for (auto const& cls : p) {
      auto c = nlohmann::json::array();
      for (auto i : cls) {
        c.push_back(format_transformation(base[i]));
      }
      out.push_back(c);
    }
    return out;
  }

  inline nlohmann::json to_json(GreensStructure const& g) {
    return {{"family", g.base.label()},
            {"n", g.base.degree()},
            {"R", to_json(g.r_classes, g.base)},
            {"L", to_json(g.l_classes, g.base)},
            {"H", to_json(g.h_classes, g.base)},
            {"D", to_json(g.d_classes, g.base)}};
  }

  struct Report {
    std::vector<VerificationRow> rows;
    std::vector<RankCertificate> certificates;
    std::vector<std::string>     notes;
    nlohmann::json               structure = nlohmann::json::array();
  };

  inline nlohmann::json to_json(Report const& r) {
    nlohmann::json j;
    j["tool_version"]   = kToolVersion;
    j["schema_version"] = kSchemaVersion;
    j["rows"]           = nlohmann::json::array();
    for (auto const& row : r.rows) {
      j["rows"].push_back(to_json(row));
    }
    j["certificates"] = nlohmann::json::array();
    for (auto const& c : r.certificates) {
      j["certificates"].push_back(to_json(c));
    }
    if (!r.structure.empty()) {
      j["structure"] = r.structure;
    }
    if (!r.notes.empty()) {
      j["notes"] = r.notes;
    }
    return j;
  }

}  // namespace contractions

#endif  // CONTRACTIONS_REPORT_HPP_
