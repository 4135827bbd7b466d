#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dga/json_io.hpp"

using namespace dga;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DslError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Window parse_window_flag(const std::string& text) {
  Window w;
  char tail = 0;
  if (sscanf(text.c_str(), "%d:%d,%d:%d%c", &w.n_min, &w.n_max, &w.r_min, &w.r_max, &tail) != 4)
    throw DslError("bad --window '" + text + "', expected n0:n1,r0:r1");
  return w;
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

const std::string& pick_cdga(const LoadedFile& lf, const std::string& flag) {
  if (!flag.empty()) {
    auto it = lf.presentations.find(flag);
    if (it == lf.presentations.end()) throw NameError("no cdga named '" + flag + "'");
    return it->first;
  }
  if (lf.presentations.size() == 1) return lf.presentations.begin()->first;
  throw DslError(lf.presentations.empty() ? "the file declares no cdga"
                                          : "several cdgas declared, pick one with --cdga");
}

const std::string& pick_module(const LoadedFile& lf, const std::string& flag) {
  if (!flag.empty()) {
    auto it = lf.modules.find(flag);
    if (it == lf.modules.end()) throw NameError("no module named '" + flag + "'");
    return it->first;
  }
  if (lf.modules.size() == 1) return lf.modules.begin()->first;
  throw DslError(lf.modules.empty() ? "the file declares no module"
                                    : "several modules declared, pick one with --module");
}

/* wide enough for cohomology over w: the outgoing differential is one degree up */
LevelwiseCdga coh_expansion(const FreeCdgaPresentation& p, Window w) {
  return expand_free(p, Window{std::min(w.n_min, 0), w.n_max + 1, std::min(w.r_min, 0), w.r_max});
}

/* wide enough for the degree <= 1 bar levels at adams <= r */
LevelwiseCdga bar_expansion(const FreeCdgaPresentation& p, int r) {
  return expand_free(p, Window::upto(3, r));
}

struct Options {
  std::string file;
  std::string window_text;
  std::string cdga;
  std::string module;
  int adams_max = -1;  // fall back to the file cutoff
  int n = 1;
  int k = 0;
  std::vector<std::string> v_labels, w_labels;

  LoadedFile load() const {
    std::optional<Window> w;
    if (!window_text.empty()) w = parse_window_flag(window_text);
    return load_file(slurp(file), w);
  }
  int resolved_adams(const LoadedFile& lf) const { return adams_max >= 0 ? adams_max : lf.cutoff; }
};

SemisimpleObject object_from_labels(GroupKind g, const std::vector<std::string>& labels) {
  SemisimpleObject o{g, {}};
  if (labels.empty()) {
    o.add(IrrLabel::trivial(g));
    return o;
  }
  for (const std::string& s : labels) o.add(parse_irr_label(g, s));
  return o;
}

bool report_ok(const Json& doc) {
  for (const auto& [name, entry] : doc["cdgas"].items())
    if (!entry["check"]["ok"].get<bool>()) return false;
  for (const auto& [name, entry] : doc["modules"].items())
    if (!entry["check"]["ok"].get<bool>()) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded cdga and cell module calculator"};
  app.require_subcommand(1);
  Options opt;
  int rc = 0;

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "source file")->required();
    sub->add_option("--window", opt.window_text, "working window n0:n1,r0:r1");
    return sub;
  };

  auto* check = with_file(app.add_subcommand("check", "structure checks for everything declared"));
  check->callback([&] {
    Json doc = check_document(opt.load());
    emit(doc);
    rc = doc["ok"].get<bool>() ? 0 : 1;
  });

  auto* coh = with_file(app.add_subcommand("cohomology", "bigraded cohomology table"));
  coh->add_option("--cdga", opt.cdga, "which cdga");
  coh->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_cdga(lf, opt.cdga);
    emit(cohomology_document(name, coh_expansion(lf.presentations.at(name), lf.window), lf.window));
  });

  auto* bar = with_file(app.add_subcommand("bar", "degree zero bar cohomology"));
  bar->add_option("--adams-max", opt.adams_max, "adams truncation");
  bar->add_option("--cdga", opt.cdga, "which cdga");
  bar->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_cdga(lf, opt.cdga);
    int r = opt.resolved_adams(lf);
    emit(bar_document(name, hopf_truncation(bar_expansion(lf.presentations.at(name), r), r)));
  });

  auto* gam = with_file(app.add_subcommand("gamma", "co-Lie pieces of the bar cohomology"));
  gam->add_option("--adams-max", opt.adams_max, "adams truncation");
  gam->add_option("--cdga", opt.cdga, "which cdga");
  gam->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_cdga(lf, opt.cdga);
    int r = opt.resolved_adams(lf);
    emit(gamma_document(name,
                        gamma(hopf_truncation(bar_expansion(lf.presentations.at(name), r), r))));
  });

  auto* mini = with_file(app.add_subcommand("minimal", "n-minimal model"));
  mini->add_option("--n", opt.n, "minimality degree");
  mini->add_option("--adams-max", opt.adams_max, "adams truncation");
  mini->add_option("--cdga", opt.cdga, "which cdga");
  mini->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_cdga(lf, opt.cdga);
    int r = opt.resolved_adams(lf);
    LevelwiseCdga big =
        expand_free(lf.presentations.at(name), Window::upto(std::max(opt.n + 2, 3), r));
    MinimalModelResult res = minimal_model(big, opt.n, r);
    emit(minimal_document(name, res));
    rc = res.verified ? 0 : 1;
  });

  auto* mod = app.add_subcommand("module", "cell module commands");
  mod->require_subcommand(1);

  auto* mcheck = with_file(mod->add_subcommand("check", "connection structure checks"));
  mcheck->add_option("--module", opt.module, "which module");
  mcheck->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_module(lf, opt.module);
    Json doc = module_check_document(name, lf.modules.at(name));
    emit(doc);
    rc = doc["ok"].get<bool>() ? 0 : 1;
  });

  auto* mheart = with_file(mod->add_subcommand("heart", "is q concentrated in degree zero"));
  mheart->add_option("--module", opt.module, "which module");
  mheart->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_module(lf, opt.module);
    emit(module_heart_document(name, lf.modules.at(name)));
  });

  auto* mtrunc = with_file(mod->add_subcommand("truncate", "the D^{<=0} truncation"));
  mtrunc->add_option("--module", opt.module, "which module");
  mtrunc->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_module(lf, opt.module);
    emit(module_truncate_document(name, lf.modules.at(name)));
  });

  auto* mqiso = with_file(mod->add_subcommand("qiso", "is the truncation inclusion a quasi iso"));
  mqiso->add_option("--module", opt.module, "which module");
  mqiso->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_module(lf, opt.module);
    emit(module_qiso_document(name, lf.modules.at(name)));
  });

  auto* mext = with_file(mod->add_subcommand("ext", "ext groups over the co-Lie algebra"));
  mext->add_option("--cdga", opt.cdga, "which cdga");
  mext->add_option("--k", opt.k, "cohomological degree");
  mext->add_option("--adams-max", opt.adams_max, "adams truncation");
  mext->add_option("--v", opt.v_labels, "source labels, repeatable (default trivial)");
  mext->add_option("--w", opt.w_labels, "target labels, repeatable (default trivial)");
  mext->callback([&] {
    LoadedFile lf = opt.load();
    const std::string& name = pick_cdga(lf, opt.cdga);
    int r = opt.resolved_adams(lf);
    CoLieData g = gamma(hopf_truncation(bar_expansion(lf.presentations.at(name), r), r));
    SemisimpleObject v = object_from_labels(lf.ast.group, opt.v_labels);
    SemisimpleObject w = object_from_labels(lf.ast.group, opt.w_labels);
    emit(ext_document(name, ext(g, v, w, opt.k, r), opt.k, r));
  });

  auto* rep = with_file(app.add_subcommand("report", "everything about the file as one document"));
  bool all = false;
  rep->add_flag("--all", all, "include every analysis")->required();
  rep->callback([&] {
    Json doc = report_document(opt.load());
    emit(doc);
    rc = report_ok(doc) ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const dga::ParseError& e) {
    std::cerr << opt.file << ": " << e.what() << "\n";
    return 2;
  } catch (const DslError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
