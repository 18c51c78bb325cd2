#include "cfw/config.hpp"

#include <algorithm>
#include <functional>

namespace cfw {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const std::string& path,
                 const std::vector<std::string>& allowed,
                 std::vector<std::string>& issues) {
  if (!j.is_object()) {
    issues.push_back(path + ": expected an object");
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      issues.push_back(path + "/" + it.key() + ": unknown field (strict schema)");
  }
}

bool require(const json& j, const std::string& path, const std::string& key,
             std::vector<std::string>& issues) {
  if (!j.contains(key)) {
    issues.push_back(path + "/" + key + ": missing required field");
    return false;
  }
  return true;
}

Rational parse_rational(const json& j, const std::string& path,
                        std::vector<std::string>& issues) {
  try {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long>()));
    if (j.is_string()) return rational_from_string(j.get<std::string>());
  } catch (const std::exception& e) {
    issues.push_back(path + ": " + e.what());
    return 0;
  }
  issues.push_back(path + ": expected an integer or a \"num/den\" string");
  return 0;
}

GroupDescriptor parse_group(const json& j, const std::string& path,
                            std::vector<std::string>& issues) {
  GroupDescriptor d = GroupDescriptor::trivial();
  if (!j.is_object() || !j.contains("kind")) {
    issues.push_back(path + ": group needs a \"kind\"");
    return d;
  }
  const std::string kind = j.value("kind", "");
  if (kind == "free-abelian") {
    expect_keys(j, path, {"kind", "rank"}, issues);
    if (require(j, path, "rank", issues)) d = GroupDescriptor::free_abelian(j["rank"]);
  } else if (kind == "cyclic") {
    expect_keys(j, path, {"kind", "order"}, issues);
    if (require(j, path, "order", issues)) d = GroupDescriptor::cyclic(j["order"]);
  } else if (kind == "cyclic-sum") {
    expect_keys(j, path, {"kind", "q", "copies"}, issues);
    if (require(j, path, "q", issues) && require(j, path, "copies", issues))
      d = GroupDescriptor::cyclic_sum(j["q"], j["copies"]);
  } else if (kind == "direct-sum") {
    expect_keys(j, path, {"kind", "parts"}, issues);
    std::vector<GroupDescriptor> parts;
    if (require(j, path, "parts", issues))
      for (size_t i = 0; i < j["parts"].size(); ++i)
        parts.push_back(parse_group(j["parts"][i],
                                    path + "/parts/" + std::to_string(i), issues));
    d = GroupDescriptor::direct_sum(std::move(parts));
  } else if (kind == "lattice-rm") {
    expect_keys(j, path, {"kind", "dim", "mesh"}, issues);
    if (require(j, path, "dim", issues) && require(j, path, "mesh", issues))
      d = GroupDescriptor::lattice_rm(j["dim"],
                                      parse_rational(j["mesh"], path + "/mesh", issues));
  } else if (kind == "semidirect") {
    expect_keys(j, path, {"kind", "base", "j", "p"}, issues);
    if (require(j, path, "base", issues) && require(j, path, "j", issues) &&
        require(j, path, "p", issues))
      d = GroupDescriptor::semidirect(parse_group(j["base"], path + "/base", issues),
                                      parse_group(j["j"], path + "/j", issues), j["p"]);
  } else {
    issues.push_back(path + "/kind: unknown group kind \"" + kind + "\"");
  }
  try {
    d.validate();
  } catch (const GroupError& e) {
    issues.push_back(path + ": " + e.what());
  }
  return d;
}

// Elements are arrays of coordinates; lattice slots take rationals that must
// be exact multiples of the mesh (refused otherwise, never rounded).
GroupElement parse_element(const json& j, const Group& g, const std::string& path,
                           std::vector<std::string>& issues) {
  GroupElement out(std::vector<Int>(static_cast<size_t>(g.slots()), 0));
  if (!j.is_array() || static_cast<int>(j.size()) != g.slots()) {
    issues.push_back(path + ": expected " + std::to_string(g.slots()) +
                     " coordinates for " + g.desc().describe());
    return out;
  }
  // per-slot mesh scale: lattice slots carry the mesh, others are integers
  std::vector<Rational> scales(static_cast<size_t>(g.slots()), Rational(1));
  {
    // walk the descriptor to find lattice spans
    std::function<void(const GroupDescriptor&, int)> walk = [&](const GroupDescriptor& d,
                                                                int base) {
      switch (d.kind) {
        case GroupKind::LatticeR:
          for (int i = 0; i < d.rank; ++i)
            scales[static_cast<size_t>(base + i)] = d.mesh;
          break;
        case GroupKind::DirectSum: {
          int off = base;
          for (const auto& p : d.parts) {
            walk(p, off);
            off += p.slot_count();
          }
          break;
        }
        case GroupKind::Semidirect: {
          walk(d.parts[0], base);
          const int jb = d.parts[1].slot_count();
          for (int c = 0; c < d.twist_p; ++c)
            walk(d.parts[1], base + d.parts[0].slot_count() + c * jb);
          break;
        }
        default:
          break;
      }
    };
    walk(g.desc(), 0);
  }
  for (int s = 0; s < g.slots(); ++s) {
    const Rational v =
        parse_rational(j[static_cast<size_t>(s)], path + "/" + std::to_string(s), issues);
    const Rational units = v / scales[static_cast<size_t>(s)];
    if (units.get_den() != 1) {
      issues.push_back(path + "/" + std::to_string(s) +
                       ": coordinate is not an exact multiple of the lattice mesh");
      continue;
    }
    if (!units.get_num().fits_slong_p()) {
      issues.push_back(path + "/" + std::to_string(s) + ": coordinate overflows");
      continue;
    }
    out.coords[static_cast<size_t>(s)] = units.get_num().get_si();
  }
  try {
    return g.reduce(std::move(out));
  } catch (const GroupError& e) {
    issues.push_back(path + ": " + e.what());
    return GroupElement(std::vector<Int>(static_cast<size_t>(g.slots()), 0));
  }
}

std::vector<GroupElement> parse_elements(const json& j, const Group& g,
                                         const std::string& path,
                                         std::vector<std::string>& issues) {
  std::vector<GroupElement> out;
  if (!j.is_array()) {
    issues.push_back(path + ": expected an array of elements");
    return out;
  }
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_element(j[i], g, path + "/" + std::to_string(i), issues));
  return out;
}

MeasureVerdict parse_declared(const json& j, const std::string& path,
                              std::vector<std::string>& issues) {
  const std::string s = j.get<std::string>();
  if (s == "finite") return MeasureVerdict::FiniteType;
  if (s == "infinite") return MeasureVerdict::InfiniteType;
  if (s == "undecided") return MeasureVerdict::UndecidedAtDepth;
  issues.push_back(path + ": expected finite | infinite | undecided");
  return MeasureVerdict::UndecidedAtDepth;
}

TowerSpec parse_tower(const json& j, const std::string& path,
                      std::vector<std::string>& issues);

TowerSpec parse_tower_inner(const json& j, const std::string& path,
                            std::vector<std::string>& issues) {
  TowerSpec spec;
  if (!j.is_object() || !j.contains("source")) {
    issues.push_back(path + ": tower needs a \"source\"");
    return spec;
  }
  const std::string source = j.value("source", "");
  if (source == "explicit") {
    spec.source = TowerSpec::Source::Explicit;
    expect_keys(j, path, {"source", "group", "levels", "declared"}, issues);
    if (!require(j, path, "group", issues) || !require(j, path, "levels", issues))
      return spec;
    const size_t before = issues.size();
    spec.group = parse_group(j["group"], path + "/group", issues);
    if (issues.size() > before) return spec;
    Group g(spec.group);
    ExplicitTowerSpec ex;
    if (j.contains("declared"))
      ex.declared = parse_declared(j["declared"], path + "/declared", issues);
    const json& levels = j["levels"];
    if (!levels.is_array() || levels.empty()) {
      issues.push_back(path + "/levels: expected a nonempty array");
      return spec;
    }
    for (size_t i = 0; i < levels.size(); ++i) {
      const std::string lp = path + "/levels/" + std::to_string(i);
      expect_keys(levels[i], lp, {"f", "c"}, issues);
      if (!require(levels[i], lp, "f", issues)) return spec;
      ex.f_levels.push_back(parse_elements(levels[i]["f"], g, lp + "/f", issues));
      const bool last = i + 1 == levels.size();
      if (!last) {
        // level i pairs F_i with the choice set C_{i+1} leading upward
        if (!require(levels[i], lp, "c", issues)) return spec;
        ex.c_levels.push_back(parse_elements(levels[i]["c"], g, lp + "/c", issues));
      } else if (levels[i].contains("c")) {
        issues.push_back(lp + "/c: the final level carries no choice set");
      }
    }
    spec.explicit_spec = std::move(ex);
  } else if (source == "aux-zp") {
    spec.source = TowerSpec::Source::AuxZp;
    expect_keys(j, path, {"source", "p", "depth"}, issues);
    AuxZpSpec a;
    if (require(j, path, "p", issues)) a.p = j["p"];
    if (require(j, path, "depth", issues)) a.depth = j["depth"];
    spec.group = GroupDescriptor::semidirect(GroupDescriptor::trivial(),
                                             GroupDescriptor::free_abelian(1), a.p);
    spec.aux_zp = a;
  } else if (source == "aux-j") {
    spec.source = TowerSpec::Source::AuxJ;
    expect_keys(j, path, {"source", "j", "p", "depth"}, issues);
    AuxJSpec a;
    if (require(j, path, "j", issues)) a.j = parse_group(j["j"], path + "/j", issues);
    if (require(j, path, "p", issues)) a.p = j["p"];
    if (require(j, path, "depth", issues)) a.depth = j["depth"];
    spec.group = GroupDescriptor::semidirect(GroupDescriptor::trivial(), a.j, a.p);
    spec.aux_j = a;
  } else if (source == "lattice-rigid") {
    spec.source = TowerSpec::Source::LatticeRigid;
    expect_keys(j, path, {"source", "group", "g_seq", "alphas", "depth", "w_denominator"},
                issues);
    if (!require(j, path, "group", issues)) return spec;
    const size_t before = issues.size();
    spec.group = parse_group(j["group"], path + "/group", issues);
    if (issues.size() > before) return spec;
    Group g(spec.group);
    LatticeRigidSpec l;
    if (require(j, path, "g_seq", issues))
      l.g_seq = parse_elements(j["g_seq"], g, path + "/g_seq", issues);
    if (require(j, path, "alphas", issues))
      for (size_t i = 0; i < j["alphas"].size(); ++i)
        l.alphas.push_back(parse_rational(j["alphas"][i],
                                          path + "/alphas/" + std::to_string(i), issues));
    if (require(j, path, "depth", issues)) l.depth = j["depth"];
    if (j.contains("w_denominator")) {
      const std::string w = j["w_denominator"];
      if (w == "printed")
        l.conv = WDenominator::FirstCoordinate;
      else if (w == "per-coordinate")
        l.conv = WDenominator::PerCoordinate;
      else
        issues.push_back(path + "/w_denominator: expected printed | per-coordinate");
    }
    spec.lattice_rigid = std::move(l);
  } else if (source == "discrete-rigid") {
    spec.source = TowerSpec::Source::DiscreteRigid;
    expect_keys(j, path, {"source", "group", "g_seq", "d", "h_seq", "depth", "f0", "growth"},
                issues);
    if (!require(j, path, "group", issues)) return spec;
    const size_t before = issues.size();
    spec.group = parse_group(j["group"], path + "/group", issues);
    if (issues.size() > before) return spec;
    Group g(spec.group);
    DiscreteRigidSpec ds;
    if (require(j, path, "g_seq", issues))
      ds.g_seq = parse_elements(j["g_seq"], g, path + "/g_seq", issues);
    ds.d = g.identity();
    if (j.contains("d")) ds.d = parse_element(j["d"], g, path + "/d", issues);
    if (require(j, path, "h_seq", issues))
      for (const auto& h : j["h_seq"]) ds.h_seq.push_back(h.get<Int>());
    if (require(j, path, "depth", issues)) ds.depth = j["depth"];
    if (j.contains("f0")) ds.f0 = parse_elements(j["f0"], g, path + "/f0", issues);
    if (j.contains("growth"))
      ds.growth = parse_rational(j["growth"], path + "/growth", issues);
    spec.discrete_rigid = std::move(ds);
  } else if (source == "product") {
    spec.source = TowerSpec::Source::Product;
    expect_keys(j, path, {"source", "first", "second"}, issues);
    if (require(j, path, "first", issues) && require(j, path, "second", issues)) {
      const size_t before = issues.size();
      spec.product_first = std::make_shared<TowerSpec>(
          parse_tower(j["first"], path + "/first", issues));
      spec.product_second = std::make_shared<TowerSpec>(
          parse_tower(j["second"], path + "/second", issues));
      if (issues.size() == before) {
        auto combined = combined_product_group(
            std::make_shared<Group>(spec.product_first->group),
            std::make_shared<Group>(spec.product_second->group));
        spec.group = combined->desc();
      }
    }
  } else {
    issues.push_back(path + "/source: unknown tower source \"" + source + "\"");
  }
  return spec;
}

TowerSpec parse_tower(const json& j, const std::string& path,
                      std::vector<std::string>& issues) {
  return parse_tower_inner(j, path, issues);
}

}  // namespace

nlohmann::json group_to_json(const GroupDescriptor& d) {
  json j;
  switch (d.kind) {
    case GroupKind::FreeAbelian:
      j = {{"kind", "free-abelian"}, {"rank", d.rank}};
      break;
    case GroupKind::Cyclic:
      j = {{"kind", "cyclic"}, {"order", d.order}};
      break;
    case GroupKind::DirectSum: {
      json parts = json::array();
      for (const auto& p : d.parts) parts.push_back(group_to_json(p));
      j = {{"kind", "direct-sum"}, {"parts", parts}};
      break;
    }
    case GroupKind::LatticeR:
      j = {{"kind", "lattice-rm"}, {"dim", d.rank}, {"mesh", rational_to_string(d.mesh)}};
      break;
    case GroupKind::Semidirect:
      j = {{"kind", "semidirect"},
           {"base", group_to_json(d.parts[0])},
           {"j", group_to_json(d.parts[1])},
           {"p", d.twist_p}};
      break;
  }
  return j;
}

WorkbenchConfig parse_config(const std::string& text) {
  std::vector<std::string> issues;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("/: JSON parse error: ") + e.what()});
  }

  WorkbenchConfig cfg;
  cfg.resolved = doc;
  expect_keys(doc, "",
              {"schema_version", "tower", "sequences", "cylinders", "experiments"},
              issues);
  if (doc.contains("schema_version")) {
    cfg.schema_version = doc["schema_version"];
    if (cfg.schema_version != 1)
      issues.push_back("/schema_version: unsupported version");
  } else {
    issues.push_back("/schema_version: missing required field");
  }

  std::optional<Group> group;
  if (doc.contains("tower")) {
    cfg.tower = parse_tower(doc["tower"], "/tower", issues);
    if (issues.empty()) group.emplace(cfg.tower->group);
  }

  if (doc.contains("sequences")) {
    if (!group) {
      issues.push_back("/sequences: sequences need a tower to fix the group");
    } else if (!doc["sequences"].is_object()) {
      issues.push_back("/sequences: expected an object of named element lists");
    } else {
      for (auto it = doc["sequences"].begin(); it != doc["sequences"].end(); ++it)
        cfg.sequences[it.key()] =
            parse_elements(it.value(), *group, "/sequences/" + it.key(), issues);
    }
  }
  if (doc.contains("cylinders")) {
    if (!group) {
      issues.push_back("/cylinders: cylinders need a tower to fix the group");
    } else if (!doc["cylinders"].is_object()) {
      issues.push_back("/cylinders: expected an object of named cylinders");
    } else {
      for (auto it = doc["cylinders"].begin(); it != doc["cylinders"].end(); ++it) {
        const std::string path = "/cylinders/" + it.key();
        expect_keys(it.value(), path, {"level", "base"}, issues);
        CylinderSpec cs;
        if (require(it.value(), path, "level", issues)) cs.level = it.value()["level"];
        if (require(it.value(), path, "base", issues))
          cs.base = parse_elements(it.value()["base"], *group, path + "/base", issues);
        cfg.cylinders[it.key()] = std::move(cs);
      }
    }
  }

  if (doc.contains("experiments")) {
    const json& ex = doc["experiments"];
    expect_keys(ex, "/experiments",
                {"rigidity", "spectral", "poisson", "replab", "diamond"}, issues);
    if (ex.contains("rigidity")) {
      const json& b = ex["rigidity"];
      const std::string path = "/experiments/rigidity";
      expect_keys(b, path, {"sequence", "cylinders", "work_levels"}, issues);
      RigidityBlock rb;
      if (require(b, path, "sequence", issues)) rb.sequence = b["sequence"];
      if (require(b, path, "cylinders", issues))
        for (const auto& c : b["cylinders"]) rb.cylinders.push_back(c.get<std::string>());
      if (b.contains("work_levels"))
        for (const auto& l : b["work_levels"]) rb.work_levels.push_back(l.get<int>());
      cfg.rigidity = std::move(rb);
    }
    if (ex.contains("spectral")) {
      const json& b = ex["spectral"];
      const std::string path = "/experiments/spectral";
      expect_keys(b, path, {"sequence", "level", "pairs"}, issues);
      SpectralBlock sb;
      if (require(b, path, "sequence", issues)) sb.sequence = b["sequence"];
      if (require(b, path, "level", issues)) sb.level = b["level"];
      if (require(b, path, "pairs", issues))
        for (const auto& p : b["pairs"]) {
          if (!p.is_array() || p.size() != 2) {
            issues.push_back(path + "/pairs: each pair is [nameA, nameB]");
            continue;
          }
          sb.pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
        }
      cfg.spectral = std::move(sb);
    }
    if (ex.contains("poisson")) {
      const json& b = ex["poisson"];
      const std::string path = "/experiments/poisson";
      expect_keys(b, path,
                  {"seed", "trials", "window_level", "intensity_scale", "tv_tolerance",
                   "cov_tolerance", "set_a", "set_b", "rigidity_sequence"},
                  issues);
      PoissonBlock pb;
      if (require(b, path, "seed", issues)) pb.seed = b["seed"].get<std::uint64_t>();
      if (b.contains("trials")) pb.trials = b["trials"];
      if (b.contains("window_level")) pb.window_level = b["window_level"];
      if (b.contains("intensity_scale")) pb.intensity_scale = b["intensity_scale"];
      if (b.contains("tv_tolerance")) pb.tv_tolerance = b["tv_tolerance"];
      if (b.contains("cov_tolerance")) pb.cov_tolerance = b["cov_tolerance"];
      if (require(b, path, "set_a", issues)) pb.set_a = b["set_a"];
      if (b.contains("set_b")) pb.set_b = b["set_b"];
      if (b.contains("rigidity_sequence"))
        pb.rigidity_sequence = b["rigidity_sequence"];
      cfg.poisson = std::move(pb);
    }
    if (ex.contains("replab")) {
      const json& b = ex["replab"];
      const std::string path = "/experiments/replab";
      expect_keys(b, path, {"seed", "cases", "prime_order"}, issues);
      ReplabBlock rb;
      if (require(b, path, "seed", issues)) rb.seed = b["seed"].get<std::uint64_t>();
      if (b.contains("cases")) rb.cases = b["cases"];
      if (b.contains("prime_order")) rb.prime_order = b["prime_order"];
      cfg.replab = std::move(rb);
    }
    if (ex.contains("diamond")) {
      const json& b = ex["diamond"];
      const std::string path = "/experiments/diamond";
      expect_keys(b, path, {"ps", "cap", "factor", "check"}, issues);
      DiamondBlock db;
      if (require(b, path, "ps", issues))
        for (const auto& p : b["ps"]) db.ps.push_back(p.get<Int>());
      if (b.contains("cap")) db.cap = b["cap"];
      if (b.contains("factor")) {
        std::vector<Int> fs;
        for (const auto& v : b["factor"]) fs.push_back(v.get<Int>());
        db.factor_set = std::move(fs);
      }
      if (b.contains("check")) {
        expect_keys(b["check"], path + "/check", {"set", "bound"}, issues);
        std::vector<Int> cs;
        if (require(b["check"], path + "/check", "set", issues))
          for (const auto& v : b["check"]["set"]) cs.push_back(v.get<Int>());
        Int bound = 0;
        if (require(b["check"], path + "/check", "bound", issues))
          bound = b["check"]["bound"].get<Int>();
        db.check = {std::move(cs), bound};
      }
      cfg.diamond = std::move(db);
    }
  }

  // cross references
  auto check_ref = [&](const std::string& name, const auto& map, const std::string& where) {
    if (!name.empty() && !map.count(name))
      issues.push_back(where + ": unresolved reference \"" + name + "\"");
  };
  if (cfg.rigidity) {
    check_ref(cfg.rigidity->sequence, cfg.sequences, "/experiments/rigidity/sequence");
    for (const auto& c : cfg.rigidity->cylinders)
      check_ref(c, cfg.cylinders, "/experiments/rigidity/cylinders");
  }
  if (cfg.spectral) {
    check_ref(cfg.spectral->sequence, cfg.sequences, "/experiments/spectral/sequence");
    for (const auto& [a, b] : cfg.spectral->pairs) {
      check_ref(a, cfg.cylinders, "/experiments/spectral/pairs");
      check_ref(b, cfg.cylinders, "/experiments/spectral/pairs");
    }
  }
  if (cfg.poisson) {
    check_ref(cfg.poisson->set_a, cfg.cylinders, "/experiments/poisson/set_a");
    if (!cfg.poisson->set_b.empty())
      check_ref(cfg.poisson->set_b, cfg.cylinders, "/experiments/poisson/set_b");
    if (!cfg.poisson->rigidity_sequence.empty())
      check_ref(cfg.poisson->rigidity_sequence, cfg.sequences,
                "/experiments/poisson/rigidity_sequence");
  }

  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

BuiltTower build_tower(const TowerSpec& spec) {
  switch (spec.source) {
    case TowerSpec::Source::Explicit: {
      auto g = std::make_shared<Group>(spec.group);
      const auto& ex = *spec.explicit_spec;
      std::vector<GroupSet> f;
      std::vector<GroupSet> c{GroupSet::empty(g)};
      for (const auto& lvl : ex.f_levels) f.push_back(GroupSet::from_points(g, lvl));
      for (const auto& cs : ex.c_levels) c.push_back(GroupSet::from_points(g, cs));
      return BuiltTower{Tower(g, std::move(f), std::move(c), ex.declared), {}, {}};
    }
    case TowerSpec::Source::AuxZp:
      return BuiltTower{aux_tower_zp(spec.aux_zp->p, spec.aux_zp->depth), {}, {}};
    case TowerSpec::Source::AuxJ:
      return BuiltTower{aux_tower_j(spec.aux_j->j, spec.aux_j->p, spec.aux_j->depth),
                        {}, {}};
    case TowerSpec::Source::LatticeRigid: {
      auto g = std::make_shared<Group>(spec.group);
      RigidPlan plan;
      plan.alphas = spec.lattice_rigid->alphas;
      auto res = rigid_tower_rm(g, spec.lattice_rigid->g_seq, plan,
                                spec.lattice_rigid->depth, spec.lattice_rigid->conv);
      Tower t = res.tower;
      return BuiltTower{std::move(t), std::move(res), {}};
    }
    case TowerSpec::Source::DiscreteRigid: {
      auto g = std::make_shared<Group>(spec.group);
      RigidPlan plan;
      plan.h_seq = spec.discrete_rigid->h_seq;
      plan.target_d = spec.discrete_rigid->d;
      DiscreteTowerOptions opts;
      opts.f0 = spec.discrete_rigid->f0;
      opts.growth = spec.discrete_rigid->growth;
      auto res = rigid_tower_discrete(spec.discrete_rigid->g_seq, g,
                                      spec.discrete_rigid->d, plan,
                                      spec.discrete_rigid->depth, opts);
      Tower t = res.tower;
      return BuiltTower{std::move(t), {}, std::move(res)};
    }
    case TowerSpec::Source::Product: {
      auto first = build_tower(*spec.product_first);
      auto second = build_tower(*spec.product_second);
      return BuiltTower{product_tower(first.tower, second.tower), {}, {}};
    }
  }
  throw ConfigError({"/tower: unsupported source"});
}

}  // namespace cfw
