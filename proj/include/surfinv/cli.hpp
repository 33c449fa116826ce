#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surfinv/pipeline.hpp"

namespace surfinv {

namespace clidetail {

inline void print_invariants_text(const Json& rep, std::ostream& out) {
  const Json& s = rep.at("S");
  out << "S: chi=" << s.at("chi") << " p_g=" << s.at("p_g") << " q=" << s.at("q")
      << " K^2=" << s.at("K_sq") << " h0(2K_V)=" << s.at("h0_2KV") << " N^2=" << s.at("N_sq")
      << "\n";
  out << "t: i1=" << s.at("t").at("i1") << " i2=" << s.at("t").at("i2")
      << " i3=" << s.at("t").at("i3") << "\n";
  for (const char* w : {"W1", "W2", "W3"}) {
    const Json& q = rep.at("quotients").at(w);
    out << w << ": chi=" << q.at("chi") << " p_g=" << q.at("p_g") << " q=" << q.at("q");
    if (q.contains("kodaira")) out << " Kod=" << q.at("kodaira").get<std::string>();
    if (q.contains("verdict")) out << " verdict=" << q.at("verdict").get<std::string>();
    out << "\n";
  }
  const Json& c = rep.at("compositions");
  out << "bicanonical composed: i1=" << (c.at("i1").get<bool>() ? "yes" : "no")
      << " i2=" << (c.at("i2").get<bool>() ? "yes" : "no")
      << " i3=" << (c.at("i3").get<bool>() ? "yes" : "no") << "\n";
  const Json& li = rep.at("local_intersections");
  out << "local intersections: I(p2)=" << li.at("p2") << " I(p3)=" << li.at("p3") << "\n";
}

inline void print_classify_text(int h0, std::ostream& out) {
  out << "quotient cases for h0(2K_W+L) = " << h0 << ":\n";
  for (const auto& c : enumerate_quotient_kodaira(h0)) {
    out << "  Kod(P)=" << c.kodaira;
    if (c.excluded)
      out << "  EXCLUDED: " << c.exclusion_reason;
    else
      out << "  sum(r_i-2)=" << c.sum_r_minus_2 << "  Bbar^2=" << c.B_bar_sq
          << "  K_P.Bbar=" << c.K_P_B_bar;
    out << "\n";
  }
  if (h0 == 1) {
    out << "branch component cases:\n";
    for (const auto& c : enumerate_branch_shapes()) {
      out << "  " << c.label << ") B' = " << c.components << ", K_W^2 = " << c.K_W_sq;
      if (c.requires_kod1) out << " (Kod(W) = 1)";
      out << "\n";
    }
    out << "multiple fibres (Kod 1):\n";
    for (const auto& f : enumerate_multiple_fibres()) {
      out << "  (";
      for (size_t i = 0; i < f.m_tuple.size(); ++i)
        out << (i ? "," : "") << f.m_tuple[i];
      out << "): BF=" << f.BF << " genus=" << f.genus << "\n";
    }
  }
}

inline Json classify_json(int h0) {
  Json j;
  j["schema_version"] = 1;
  Json cases = Json::array();
  for (const auto& c : enumerate_quotient_kodaira(h0)) {
    Json one;
    one["kodaira"] = c.kodaira;
    one["excluded"] = c.excluded;
    if (c.excluded)
      one["reason"] = c.exclusion_reason;
    else {
      one["sum_r_minus_2"] = c.sum_r_minus_2;
      one["B_bar_sq"] = c.B_bar_sq;
      one["K_P_B_bar"] = c.K_P_B_bar;
    }
    cases.push_back(std::move(one));
  }
  j["quotient_cases"] = std::move(cases);
  if (h0 == 1) {
    Json shapes = Json::array();
    for (const auto& c : enumerate_branch_shapes()) {
      shapes.push_back(Json{{"case", std::string(1, c.label)},
                            {"components", c.components},
                            {"gamma_sq", c.gamma_sq},
                            {"gamma_genus", c.gamma_genus},
                            {"l", c.l},
                            {"K_W_sq", c.K_W_sq},
                            {"requires_kod1", c.requires_kod1}});
    }
    j["branch_shapes"] = std::move(shapes);
    Json fibres = Json::array();
    for (const auto& f : enumerate_multiple_fibres()) {
      fibres.push_back(
          Json{{"m", f.m_tuple}, {"BF", f.BF}, {"genus", f.genus}, {"note", f.note}});
    }
    j["multiple_fibres"] = std::move(fibres);
  }
  return j;
}

}  // namespace clidetail

/// Front-end entry point; returns the process exit code.
/// 0 = success, 1 = computation error, 2 = usage/config error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"surfinv: exact invariants of surfaces with p_g = 0, K^2 = 3 and an involution"};
  app.require_subcommand(1);

  std::string config_path;
  bool as_json = false;
  std::string system_name;
  int classify_h0 = 1;
  double tol = 1e-8;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "path to the example configuration JSON")
        ->required();
    cmd->add_flag("--json", as_json, "emit a JSON report");
  };

  CLI::App* cmd_linsys = app.add_subcommand("linsys", "dimension and sections of one system");
  add_config(cmd_linsys);
  cmd_linsys->add_option("--system", system_name,
                         "curve name (C5, C6) or named h0 target from the config")
      ->required();

  CLI::App* cmd_appendix =
      app.add_subcommand("reproduce-appendix", "the seven appendix h0 values");
  add_config(cmd_appendix);

  CLI::App* cmd_inv = app.add_subcommand("invariants", "invariants of S and its quotients");
  add_config(cmd_inv);

  CLI::App* cmd_classify =
      app.add_subcommand("classify", "classification tables for the quotient");
  cmd_classify->add_option("--h0", classify_h0, "h0(2K_W+L), 0 or 1")->check(CLI::Range(0, 1));
  cmd_classify->add_flag("--json", as_json, "emit a JSON report");

  CLI::App* cmd_img = app.add_subcommand("image-degree", "degree of the bicanonical image model");
  add_config(cmd_img);
  cmd_img->add_option("--tol", tol, "numeric clustering tolerance")
      ->check(CLI::PositiveNumber);

  CLI::App* cmd_full = app.add_subcommand("full-report", "the complete report");
  add_config(cmd_full);

  std::vector<const char*> argv;
  argv.push_back("surfinv");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_classify)) {
      if (as_json)
        out << clidetail::classify_json(classify_h0).dump(2) << "\n";
      else
        clidetail::print_classify_text(classify_h0, out);
      return 0;
    }

    ExampleConfig cfg;
    try {
      cfg = load_config(config_path);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return 2;
    }

    if (app.got_subcommand(cmd_linsys)) {
      PlaneSystem sys = [&] {
        auto cit = cfg.curves.find(system_name);
        if (cit != cfg.curves.end()) {
          PlaneSystem s = PlaneSystem::generic(cit->second.degree, cfg.field);
          for (size_t p = 0; p < cfg.geometry.points.size(); ++p)
            s = s.imposed(cfg.curve_chain(cit->second, p));
          return s;
        }
        for (const auto& t : cfg.h0_targets)
          if (t.name == system_name)
            return class_system(cfg.target_class(t), cfg.geometry, cfg.lattice);
        throw ConfigError("/h0_targets", "no curve or target named '" + system_name + "'");
      }();
      if (as_json) {
        Json j;
        j["schema_version"] = 1;
        j["system"] = system_name;
        j["dimension"] = sys.dimension();
        Json secs = Json::array();
        for (const auto& s : sys.sections()) secs.push_back(s.poly.str());
        j["sections"] = std::move(secs);
        out << j.dump(2) << "\n";
      } else {
        out << "dimension: " << sys.dimension() << "\n";
        int i = 1;
        for (const auto& s : sys.sections()) out << "section " << i++ << ": " << s.poly.str() << "\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_appendix)) {
      auto dims = reproduce_appendix(cfg);
      if (as_json) {
        Json j;
        j["schema_version"] = 1;
        j["dimensions"] = dims;
        out << j.dump(2) << "\n";
      } else {
        for (size_t i = 0; i < dims.size(); ++i) out << (i ? " " : "") << dims[i];
        out << "\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_inv)) {
      BuildOptions opt;
      opt.with_image_degree = false;
      Report rep = build_example(cfg, opt);
      if (as_json)
        out << rep.j.dump(2) << "\n";
      else
        clidetail::print_invariants_text(rep.j, out);
      return 0;
    }
    if (app.got_subcommand(cmd_img)) {
      ImageDegreeResult img = image_degree(cfg, tol);
      err << "measured: " << img.seconds << " s\n";
      if (as_json) {
        Json j;
        j["schema_version"] = 1;
        j["image_degree"] = img.distinct_images;
        j["eliminant_squarefree_degree"] = img.eliminant_squarefree_degree;
        j["residual_degree"] = img.residual_degree;
        j["alt_chart_images"] = img.alt_chart_images;
        j["shear"] = img.shear;
        out << j.dump(2) << "\n";
      } else {
        out << "image degree: " << img.distinct_images << "\n";
        out << "eliminant squarefree degree: " << img.eliminant_squarefree_degree << "\n";
        out << "alternate chart count: " << img.alt_chart_images << "\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_full)) {
      Report rep = build_example(cfg);
      if (as_json) {
        out << rep.j.dump(2) << "\n";
      } else {
        clidetail::print_invariants_text(rep.j, out);
        out << "appendix dimensions:";
        for (const auto& d : rep.j.at("appendix_dimensions")) out << " " << d;
        out << "\n";
        out << "image degree: " << rep.j.at("image_degree").at("distinct_images")
            << " (eliminant " << rep.j.at("image_degree").at("eliminant_squarefree_degree")
            << ")\n";
        out << "bicanonical degree: " << rep.j.at("bicanonical_degree") << "\n";
        out << "genus-3 fibration: C.D = " << rep.j.at("fibration").at("C.D").dump()
            << ", genus " << rep.j.at("fibration").at("genus") << "\n";
      }
      return 0;
    }
    err << "no subcommand\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace surfinv
