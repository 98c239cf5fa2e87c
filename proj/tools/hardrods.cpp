// hardrods CLI: equation of state, pair distribution grids, correlation
// lengths and poles, ensemble sampling, and parking probabilities, with
// CSV/JSON output and a static SVG overlay plot.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardrods/hardrods.hpp"

namespace hr = hardrods;
using nlohmann::json;

namespace {

double parse_pressure(const std::string& text) {
  return std::stod(text);  // accepts "inf" / "-inf" sentinels
}

struct Output {
  std::string path;  // empty = stdout

  void write(const std::string& payload) const {
    if (path.empty()) {
      std::cout << payload;
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << payload;
  }
};

json provenance(const std::string& command, const json& config) {
  return json{{"command", command},
              {"version", hr::kVersion},
              {"config", config}};
}

double resolve_pressure(const std::optional<std::string>& p_text,
                        const std::optional<double>& rho) {
  if (p_text.has_value() == rho.has_value()) {
    throw std::domain_error("give exactly one of --p and --rho");
  }
  if (p_text) return parse_pressure(*p_text);
  return hr::pressure_from_density(*rho);
}

std::string grid_csv(const hr::GridFunction& grid, const std::string& name) {
  std::ostringstream os;
  hr::write_grid_csv(os, grid, name);
  return os.str();
}

json grid_json(const hr::GridFunction& grid) {
  json xs = json::array(), vs = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    xs.push_back(grid.x(i));
    vs.push_back(grid.values[i]);
  }
  return json{{"x", xs}, {"values", vs}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hard-rod parking fluid toolkit"};
  app.set_version_flag("--version", hr::kVersion);
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output file (default stdout)");

  std::optional<std::string> p_text;
  std::optional<double> rho_opt;
  double x_max = 8.0;
  std::string step_text = "1/100";
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  long long trials = 1000000;
  long long samples = 100000;
  int n_rods = 100;
  std::optional<double> l_opt;
  std::optional<std::string> l_text;
  int sweeps = 100;
  int m_max = 20;
  double bin_width = 0.05;
  int n_max = 4;
  bool emit_h = false;
  bool hist_mode = false;
  std::string pressures_text = "-20,-5,0,5,20";

  auto* c_eos = app.add_subcommand("eos", "matched (p, rho) state with potentials");
  c_eos->add_option("--p", p_text, "pressure (inf/-inf accepted)");
  c_eos->add_option("--rho", rho_opt, "density in (1/2, 1)");

  auto* c_g = app.add_subcommand("g", "pair distribution g(x) on a grid");
  c_g->add_option("--p", p_text, "pressure");
  c_g->add_option("--rho", rho_opt, "density in (1/2, 1)");
  c_g->add_option("--xmax", x_max, "grid end (<= 200)");
  c_g->add_option("--step", step_text, "grid step, rational like 1/100 or 0.01");
  c_g->add_flag("--h", emit_h, "emit h(x) = g(x) - 1 instead of g");

  auto* c_xi = app.add_subcommand("xi", "correlation length from the dominant pole");
  c_xi->add_option("--p", p_text, "pressure");
  c_xi->add_option("--rho", rho_opt, "density in (1/2, 1)");

  auto* c_poles = app.add_subcommand("poles", "pole list for branches 1..nmax");
  c_poles->add_option("--p", p_text, "pressure")->required();
  c_poles->add_option("--nmax", n_max, "largest branch index");

  auto* c_sample = app.add_subcommand("sample", "spacing chains / empirical histograms");
  c_sample->add_option("--p", p_text, "isobaric pressure");
  c_sample->add_option("--n", n_rods, "number of spacings");
  c_sample->add_option("--l", l_opt, "canonical system size (with --n)");
  c_sample->add_option("--sweeps", sweeps, "canonical MCMC sweeps");
  c_sample->add_option("--seed", seed, "RNG seed");
  c_sample->add_option("--stream", stream, "RNG stream id");
  c_sample->add_flag("--hist", hist_mode, "emit an empirical g histogram");
  c_sample->add_option("--samples", samples, "chains per histogram");
  c_sample->add_option("--mmax", m_max, "partial sums per chain");
  c_sample->add_option("--xmax", x_max, "histogram end");
  c_sample->add_option("--bin", bin_width, "histogram bin width");

  auto* c_park = app.add_subcommand("parkprob", "exact and MC parking probability");
  c_park->add_option("--n", n_rods, "number of points")->required();
  c_park->add_option("--l", l_text, "circle circumference (rational accepted)")->required();
  c_park->add_option("--trials", trials, "MC trials");
  c_park->add_option("--seed", seed, "RNG seed");

  auto* c_fig = app.add_subcommand("figure1", "SVG overlay of g(x) across pressures");
  c_fig->add_option("--pressures", pressures_text, "comma-separated pressure list");
  c_fig->add_option("--xmax", x_max, "grid end");
  c_fig->add_option("--step", step_text, "grid step");

  CLI11_PARSE(app, argc, argv);
  Output out{out_path};

  try {
    if (*c_eos) {
      if (p_text.has_value() == rho_opt.has_value()) {
        throw std::domain_error("give exactly one of --p and --rho");
      }
      hr::ThermoState s =
          p_text ? hr::ThermoState::from_pressure(parse_pressure(*p_text))
                 : hr::ThermoState::from_density(*rho_opt);
      if (format == "json") {
        json j = provenance("eos", {{"p", p_text ? json(*p_text) : json()},
                                    {"rho", rho_opt ? json(*rho_opt) : json()}});
        j["results"] = {{"p", s.p},
                        {"rho", s.rho},
                        {"gibbs_per_particle", s.gibbs},
                        {"free_energy_per_particle", s.free_energy}};
        out.write(j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "p,rho,gibbs_per_particle,free_energy_per_particle\n"
           << hr::format_float(s.p) << ',' << hr::format_float(s.rho) << ','
           << hr::format_float(s.gibbs) << ',' << hr::format_float(s.free_energy)
           << "\n";
        out.write(os.str());
      }
      return 0;
    }

    if (*c_g) {
      double p = resolve_pressure(p_text, rho_opt);
      hr::BigRational step = hr::parse_rational(step_text);
      hr::GridFunction grid = emit_h ? hr::h_grid(p, x_max, step)
                                     : hr::g_grid(p, x_max, step);
      const std::string name = emit_h ? "h" : "g";
      if (format == "json") {
        json j = provenance("g", {{"p", p},
                                  {"xmax", x_max},
                                  {"step", step_text},
                                  {"h", emit_h}});
        j["results"] = grid_json(grid);
        out.write(j.dump(2) + "\n");
      } else {
        out.write(grid_csv(grid, name));
      }
      return 0;
    }

    if (*c_xi) {
      double p = resolve_pressure(p_text, rho_opt);
      hr::CorrelationSummary s = hr::correlation_summary(p);
      if (format == "json") {
        json j = provenance("xi", {{"p", p}});
        j["results"] = {{"p", s.p},
                        {"xi", s.xi},
                        {"period", s.period},
                        {"dominant_re", s.dominant.lambda.real()},
                        {"dominant_im", s.dominant.lambda.imag()},
                        {"branch", s.dominant.index_n},
                        {"residual", s.dominant.residual},
                        {"newton_iters", s.dominant.newton_iters}};
        out.write(j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "p,xi,period,dominant_re,dominant_im,residual,newton_iters\n"
           << hr::format_float(s.p) << ',' << hr::format_float(s.xi) << ','
           << hr::format_float(s.period) << ','
           << hr::format_float(s.dominant.lambda.real()) << ','
           << hr::format_float(s.dominant.lambda.imag()) << ','
           << hr::format_float(s.dominant.residual) << ',' << s.dominant.newton_iters
           << "\n";
        out.write(os.str());
      }
      return 0;
    }

    if (*c_poles) {
      double p = parse_pressure(*p_text);
      std::ostringstream os;
      json rows = json::array();
      os << "n,re,im,residual,newton_iters\n";
      for (int n = 1; n <= n_max; ++n) {
        hr::Pole q = hr::find_pole(p, n);
        os << n << ',' << hr::format_float(q.lambda.real()) << ','
           << hr::format_float(q.lambda.imag()) << ','
           << hr::format_float(q.residual) << ',' << q.newton_iters << "\n";
        rows.push_back({{"n", n},
                        {"re", q.lambda.real()},
                        {"im", q.lambda.imag()},
                        {"residual", q.residual},
                        {"newton_iters", q.newton_iters}});
      }
      if (format == "json") {
        json j = provenance("poles", {{"p", p}, {"nmax", n_max}});
        j["results"] = rows;
        out.write(j.dump(2) + "\n");
      } else {
        out.write(os.str());
      }
      return 0;
    }

    if (*c_sample) {
      if (hist_mode) {
        hr::EmpiricalG est;
        json config;
        if (l_opt) {
          hr::CanonicalSource src{n_rods, *l_opt, sweeps, seed};
          est = hr::empirical_g(src, m_max, x_max, bin_width, samples, stream);
          config = {{"ensemble", "canonical"}, {"n", n_rods}, {"l", *l_opt},
                    {"sweeps", sweeps}};
        } else if (p_text) {
          double p = parse_pressure(*p_text);
          hr::IsobaricSource src{p, m_max, seed};
          est = hr::empirical_g(src, m_max, x_max, bin_width, samples, stream);
          config = {{"ensemble", "isobaric"}, {"p", p}};
        } else {
          throw std::domain_error("histogram mode needs --p or (--n, --l)");
        }
        config["seed"] = seed;
        config["stream"] = stream;
        config["samples"] = samples;
        config["mmax"] = m_max;
        config["xmax"] = x_max;
        config["bin"] = bin_width;
        if (format == "json") {
          json j = provenance("sample", config);
          j["results"] = grid_json(est.grid);
          j["results"]["counts"] = est.counts;
          j["results"]["rho"] = est.rho;
          out.write(j.dump(2) + "\n");
        } else {
          out.write(grid_csv(est.grid, "g"));
        }
        return 0;
      }
      hr::SpacingChain chain;
      json config;
      if (l_opt) {
        chain = hr::sample_canonical(n_rods, *l_opt, sweeps, seed, stream);
        config = {{"ensemble", "canonical"}, {"n", n_rods}, {"l", *l_opt},
                  {"sweeps", sweeps}};
      } else if (p_text) {
        chain = hr::sample_isobaric(parse_pressure(*p_text), n_rods, seed, stream);
        config = {{"ensemble", "isobaric"}, {"p", *p_text}, {"n", n_rods}};
      } else {
        throw std::domain_error("sample needs --p (isobaric) or --n with --l (canonical)");
      }
      config["seed"] = seed;
      config["stream"] = stream;
      if (format == "json") {
        json j = provenance("sample", config);
        j["results"] = {{"spacings", chain.spacings}};
        out.write(j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "i,s\n";
        for (std::size_t i = 0; i < chain.spacings.size(); ++i) {
          os << i << ',' << hr::format_float(chain.spacings[i]) << "\n";
        }
        out.write(os.str());
      }
      return 0;
    }

    if (*c_park) {
      hr::BigRational l = hr::parse_rational(*l_text);
      hr::ParkingProbability pp = hr::parking_probability(n_rods, l, trials, seed);
      double sigma_dist = pp.mc_stderr > 0
                              ? std::abs(pp.mc_estimate - pp.exact) / pp.mc_stderr
                              : 0.0;
      if (format == "json") {
        json j = provenance("parkprob", {{"n", pp.n},
                                         {"l", *l_text},
                                         {"trials", pp.trials},
                                         {"seed", seed}});
        j["results"] = {{"exact", pp.exact},
                        {"mc_estimate", pp.mc_estimate},
                        {"mc_stderr", pp.mc_stderr},
                        {"sigma_distance", sigma_dist}};
        out.write(j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "n,l,exact,mc_estimate,mc_stderr,sigma_distance\n"
           << pp.n << ',' << hr::format_float(pp.l) << ','
           << hr::format_float(pp.exact) << ',' << hr::format_float(pp.mc_estimate)
           << ',' << hr::format_float(pp.mc_stderr) << ','
           << hr::format_float(sigma_dist) << "\n";
        out.write(os.str());
      }
      return 0;
    }

    if (*c_fig) {
      std::vector<double> ps;
      std::stringstream ss(pressures_text);
      std::string tok;
      while (std::getline(ss, tok, ',')) ps.push_back(std::stod(tok));
      if (ps.empty()) throw std::domain_error("figure1: empty pressure list");
      hr::BigRational step = hr::parse_rational(step_text);
      static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                      "#9467bd", "#ff7f0e", "#8c564b"};
      std::vector<hr::GridFunction> grids;
      grids.reserve(ps.size());
      for (double p : ps) grids.push_back(hr::g_grid(p, x_max, step));
      std::vector<hr::SvgSeries> series;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        series.push_back({"p = " + hr::format_float(ps[i]),
                          palette[i % 6], &grids[i]});
      }
      std::ostringstream os;
      hr::write_svg_overlay(os, series, "pair distribution g(x)", 4.0);
      out.write(os.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
