#include "dga/json_io.hpp"

#include <algorithm>
#include <set>

namespace dga {

std::string bd_key(Bidegree bd) {
  return std::to_string(bd.n) + "," + std::to_string(bd.r);
}

Json json_of(const SemisimpleObject& x) {
  Json mult = Json::object();
  for (const auto& [l, k] : x.mult) mult[to_string(l)] = k;
  return Json{{"dim", x.dim()}, {"mult", mult}};
}

Json json_of(const CheckReport& r) {
  Json v = Json::array();
  for (const CheckViolation& x : r.violations) v.push_back({{"kind", x.kind}, {"where", x.where}});
  return Json{{"ok", r.ok()}, {"violations", v}};
}

Json json_of(const ConnectivityReport& r) {
  return Json{{"connected", r.connected},
              {"adams_connected", r.adams_connected},
              {"coh_connected", r.coh_connected}};
}

Json json_of(const Window& w) {
  return Json{{"n_min", w.n_min}, {"n_max", w.n_max}, {"r_min", w.r_min}, {"r_max", w.r_max}};
}

namespace {

Json h_table(const LevelwiseCdga& big, Window w) {
  Json t = Json::object();
  for (int n = w.n_min; n <= w.n_max; ++n)
    for (int r = w.r_min; r <= w.r_max; ++r) {
      Cohomology h = cohomology(big, {n, r});
      if (h.obj.dim() > 0) t[bd_key({n, r})] = json_of(h.obj);
    }
  return t;
}

/* expansion wide enough for cohomology tables, bar words and 1-minimal models */
LevelwiseCdga big_expansion(const FreeCdgaPresentation& p, Window w, int adams_max) {
  Window big{std::min(w.n_min, 0), std::max(w.n_max + 1, 3), std::min(w.r_min, 0),
             std::max(w.r_max, adams_max)};
  return expand_free(p, big);
}

Json chi_summary(const HopfTruncation& h) {
  Json chi = Json::object();
  Json levels = Json::object();
  for (const auto& [r, piece] : h.chi)
    if (piece.obj.dim() > 0) chi[std::to_string(r)] = json_of(piece.obj);
  for (const auto& [r, slice] : h.slices) {
    Json per = Json::object();
    for (const auto& [b, level] : slice.levels)
      if (level.rep.dim() > 0) per[std::to_string(b)] = level.rep.dim();
    if (!per.empty()) levels[std::to_string(r)] = per;
  }
  return Json{{"chi", chi}, {"levels", levels}};
}

Json gamma_summary(const CoLieData& g) {
  Json dims = Json::object();
  Json pieces = Json::object();
  for (const auto& [r, piece] : g.pieces) {
    if (piece.dim() == 0) continue;
    dims[std::to_string(r)] = piece.dim();
    pieces[std::to_string(r)] = json_of(piece.obj);
  }
  return Json{{"gamma", dims}, {"pieces", pieces}, {"co_jacobi", co_jacobi_ok(g)}};
}

Json minimal_summary(const MinimalModelResult& r) {
  std::map<Bidegree, SemisimpleObject> gens;
  for (const GenDecl& g : r.model.gens) {
    Bidegree bd{g.deg, adams_of(g.label)};
    auto [it, fresh] = gens.try_emplace(bd, SemisimpleObject{r.model.group, {}});
    it->second.add(g.label);
  }
  Json gj = Json::object();
  for (const auto& [bd, obj] : gens) gj[bd_key(bd)] = json_of(obj);
  Json dims = Json::object();
  const LevelwiseCdga& e = *r.model_expanded;
  for (const auto& [bd, comp] : e.comps)
    if (!comp.basis.empty()) dims[bd_key(bd)] = static_cast<Index>(comp.basis.size());
  Json log = Json::array();
  for (const StageLog& s : r.log)
    log.push_back({{"adams", s.adams},
                   {"degree", s.degree},
                   {"action", s.action},
                   {"added", json_of(s.added)}});
  return Json{{"verified", r.verified}, {"generators", gj}, {"dims", dims}, {"log", log}};
}

Json total_h_table(const Connection& c) {
  TotalComplex tc = total_complex(c);
  Json t = Json::object();
  for (const auto& [bd, rep] : tc.pieces) {
    try {
      SemisimpleObject h = tc.h(bd);
      if (h.dim() > 0) t[bd_key(bd)] = json_of(h);
    } catch (const OutOfWindow&) {
      /* edge pieces have no well defined cohomology, leave them out */
    }
  }
  return t;
}

Json graded_h_table(const QComplex& qc) {
  Json t = Json::object();
  for (const auto& [n, h] : graded_cohomology(qc))
    if (h.dim() > 0) t[std::to_string(n)] = json_of(h);
  return t;
}

Json weight_table(const Connection& c) {
  std::set<int> layers;
  for (const CarrierSlot& s : c.car.slots) layers.insert(adams_of(s.label));
  Json t = Json::object();
  for (int n : layers) {
    Filtration f = weight_filtration(c, n);
    SemisimpleObject carrier{c.car.group, {}};
    for (const CarrierSlot& s : f.gr->car.slots) carrier.add(s.label);
    t[std::to_string(n)] =
        Json{{"carrier", json_of(carrier)}, {"h", graded_h_table(q(*f.gr))}};
  }
  return t;
}

Json module_summary(const Connection& c) {
  Json m = Json::object();
  m["check"] = json_of(check_connection(c));
  m["heart"] = heart_test(c);
  m["h"] = total_h_table(c);
  m["q_h"] = graded_h_table(q(c));
  try {
    m["weights"] = weight_table(c);
  } catch (const AlgebraError& e) {
    m["weights"] = Json{{"error", e.what()}};
  }
  return m;
}

}  // namespace

Json check_document(const LoadedFile& lf) {
  Json cdgas = Json::object();
  Json modules = Json::object();
  bool ok = true;
  for (const auto& [name, a] : lf.expanded) {
    CheckReport r = check_cdga(a);
    ok = ok && r.ok();
    cdgas[name] = Json{{"check", json_of(r)}, {"connectivity", json_of(connectivity(a))}};
  }
  for (const auto& [name, c] : lf.modules) {
    CheckReport r = check_connection(c);
    ok = ok && r.ok();
    modules[name] = json_of(r);
  }
  return Json{{"schema", 1},
              {"group", to_string(lf.ast.group)},
              {"ok", ok},
              {"cdgas", cdgas},
              {"modules", modules}};
}

Json cohomology_document(const std::string& name, const LevelwiseCdga& big, Window w) {
  return Json{{"schema", 1}, {"cdga", name}, {"window", json_of(w)}, {"h", h_table(big, w)}};
}

Json bar_document(const std::string& name, const HopfTruncation& h) {
  Json body = chi_summary(h);
  return Json{{"schema", 1},
              {"cdga", name},
              {"adams_max", h.adams_max},
              {"chi", body["chi"]},
              {"levels", body["levels"]}};
}

Json gamma_document(const std::string& name, const CoLieData& g) {
  Json body = gamma_summary(g);
  return Json{{"schema", 1},
              {"cdga", name},
              {"adams_max", g.adams_max},
              {"gamma", body["gamma"]},
              {"pieces", body["pieces"]},
              {"co_jacobi", body["co_jacobi"]}};
}

Json minimal_document(const std::string& name, const MinimalModelResult& r) {
  Json doc{{"schema", 1}, {"cdga", name}};
  Json body = minimal_summary(r);  /* keep alive: items() does not own it */
  for (auto& [k, v] : body.items()) doc[k] = v;
  return doc;
}

Json module_check_document(const std::string& name, const Connection& c) {
  Json r = json_of(check_connection(c));
  return Json{{"schema", 1}, {"module", name}, {"ok", r["ok"]}, {"violations", r["violations"]}};
}

Json module_heart_document(const std::string& name, const Connection& c) {
  return Json{{"schema", 1},
              {"module", name},
              {"heart", heart_test(c)},
              {"h", graded_h_table(q(c))}};
}

Json module_truncate_document(const std::string& name, const Connection& c) {
  Truncation t = truncate_le0(c);
  Json slots = Json::array();
  for (const CarrierSlot& s : t.t->car.slots)
    slots.push_back({{"name", s.name}, {"deg", s.deg}, {"label", to_string(s.label)}});
  return Json{{"schema", 1},
              {"module", name},
              {"slots", slots},
              {"h", graded_h_table(q(*t.t))}};
}

Json module_qiso_document(const std::string& name, const Connection& c) {
  Truncation t = truncate_le0(c);
  return Json{{"schema", 1}, {"module", name}, {"quasi_iso", quasi_iso_test(t.inclusion)}};
}

Json ext_document(const std::string& name, const ExtResult& e, int k, int adams_max) {
  Json reps = Json::object();
  for (const auto& [l, m] : e.reps) reps[to_string(l)] = m.cols();
  return Json{{"schema", 1},
              {"cdga", name},
              {"k", k},
              {"adams_max", adams_max},
              {"dim", e.dim},
              {"reps", reps}};
}

Json report_document(const LoadedFile& lf) {
  Json cdgas = Json::object();
  for (const auto& [name, p] : lf.presentations) {
    const LevelwiseCdga& a = lf.expanded.at(name);
    Json entry = Json::object();
    entry["check"] = json_of(check_cdga(a));
    entry["connectivity"] = json_of(connectivity(a));
    LevelwiseCdga big = big_expansion(p, lf.window, lf.cutoff);
    entry["h"] = h_table(big, lf.window);
    try {
      HopfTruncation h = hopf_truncation(big, lf.cutoff);
      Json chi = chi_summary(h);
      entry["chi"] = chi["chi"];
      CoLieData g = gamma(h);
      Json gs = gamma_summary(g);
      entry["gamma"] = gs["gamma"];
      entry["pieces"] = gs["pieces"];
      entry["co_jacobi"] = gs["co_jacobi"];
    } catch (const AlgebraError& e) {
      entry["chi"] = Json{{"error", e.what()}};
    }
    try {
      entry["minimal"] = minimal_summary(minimal_model(big, 1, lf.cutoff));
    } catch (const AlgebraError& e) {
      entry["minimal"] = Json{{"error", e.what()}};
    }
    cdgas[name] = entry;
  }
  Json modules = Json::object();
  for (const auto& [name, c] : lf.modules) modules[name] = module_summary(c);
  return Json{{"schema", 1},
              {"group", to_string(lf.ast.group)},
              {"window", json_of(lf.window)},
              {"cutoff", lf.cutoff},
              {"cdgas", cdgas},
              {"modules", modules}};
}

}  // namespace dga
