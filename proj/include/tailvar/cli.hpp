#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tailvar/csv.hpp"
#include "tailvar/evt.hpp"
#include "tailvar/inverses.hpp"
#include "tailvar/represent.hpp"
#include "tailvar/spec_file.hpp"

// Command front end shared by the binary and the tests. Exit codes:
// 0 determinate verdict, 1 error, 2 undetermined.

namespace tailvar {

enum class Command { Classify, Represent, Invert, Evt, Report };

struct RunConfig {
  Command command = Command::Classify;
  std::string spec_path;
  std::optional<double> grid_start;
  std::optional<double> grid_ratio;
  std::optional<int> grid_count;
  std::optional<double> tol;
  std::optional<std::vector<double>> xs;
  std::uint64_t seed = 1;
  int blocks = 2000;
  long n = 1000;
  std::string out_dir = ".";
};

namespace cli_detail {

inline ClassifyOptions options_from(const RunConfig& cfg) {
  ClassifyOptions opt;
  ProbeGrid g = opt.grid;
  const double start = cfg.grid_start.value_or(g.start);
  const double ratio = cfg.grid_ratio.value_or(g.ratio);
  const int count = cfg.grid_count.value_or(g.count);
  opt.grid = ProbeGrid(start, ratio, count);  // validates T0>0, ratio>1, K>=8
  if (cfg.tol) {
    if (!(*cfg.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    opt.limit.tol = *cfg.tol;
  }
  if (cfg.xs) {
    if (cfg.xs->empty()) throw std::invalid_argument("xs override must be nonempty");
    opt.xs_gamma = *cfg.xs;
  }
  return opt;
}

inline std::string verdict_cell(const LimitEstimate& e) {
  char buf[160];
  if (e.finite())
    std::snprintf(buf, sizeof buf, "Finite(%.10g), residual=%.3g", e.value, e.residual);
  else
    std::snprintf(buf, sizeof buf, "%s%s%s", to_string(e.verdict),
                  e.diagnostic.empty() ? "" : ": ", e.diagnostic.c_str());
  return buf;
}

inline void write_evidence_csv(const TailClass& cls, const std::string& path) {
  CsvFile csv(path);
  csv.row({"test", "verdict", "value", "residual"});
  for (const auto& [name, est] : cls.evidence)
    csv.row({name, to_string(est.verdict), csv_num(est.value), csv_num(est.residual)});
}

inline void write_report_txt(std::ostream& os, const RunConfig& cfg,
                             const ParsedSpec& spec, const ClassifyOptions& opt,
                             const TailClass& cls) {
  os << "tailvar report\n";
  os << "spec: " << cfg.spec_path << "\n";
  os << "function: " << spec.entry.distribution.label << "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "grid: start=%g ratio=%g count=%d", opt.grid.start,
                opt.grid.ratio, opt.grid.count);
  os << buf << "\n";
  os << "verdict: " << cls.describe() << "\n";
  os << "evidence:\n";
  for (const auto& [name, est] : cls.evidence)
    os << "  " << name << ": " << verdict_cell(est) << "\n";
  for (const auto& note : cls.notes) os << "  note: " << note << "\n";
}

}  // namespace cli_detail

inline int run(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  try {
    const ParsedSpec spec = parse_spec_file(cfg.spec_path);
    const ClassifyOptions opt = cli_detail::options_from(cfg);
    fs::create_directories(cfg.out_dir);
    const auto out = [&](const std::string& name) {
      return (fs::path(cfg.out_dir) / name).string();
    };

    const Distribution& dist = spec.entry.distribution;
    const TailClass cls = classify_tail(dist.survival, spec.entry.truth_aux, opt);

    std::ofstream report(out("report.txt"), std::ios::binary);
    cli_detail::write_report_txt(report, cfg, spec, opt, cls);
    cli_detail::write_evidence_csv(cls, out("evidence.csv"));

    bool undetermined = cls.kind == TailKind::Undetermined;

    if (!undetermined &&
        (cfg.command == Command::Represent || cfg.command == Command::Report)) {
      std::optional<RepresentationReport> rep;
      if (cls.kind == TailKind::Regular || cls.kind == TailKind::Slow)
        rep = karamata_decompose(dist.survival, cls.index, dist.survival.lower_bound(),
                                 opt.grid);
      else if (cls.kind == TailKind::GammaClass && cls.aux)
        rep = gamma_decompose(dist.survival, cls.index, *cls.aux,
                              std::max(dist.survival.lower_bound(), cls.aux->lower_bound()));
      if (rep) {
        write_csv(*rep, out("representation.csv"));
        report << "representation: kind="
               << (rep->kind == RepresentationReport::Kind::KaramataRV ? "KaramataRV"
                                                                       : "GammaOmey")
               << " index=" << csv_num(rep->index) << " residual=" << csv_num(rep->residual)
               << "\n";
      } else {
        report << "representation: skipped (" << cls.describe() << ")\n";
      }
    }

    if (!undetermined &&
        (cfg.command == Command::Invert || cfg.command == Command::Report)) {
      if (cls.kind == TailKind::Regular) {
        const LimitEstimate inv = inverse_index_check(dist.survival, cls.index, opt);
        report << "inverse index: " << cli_detail::verdict_cell(inv)
               << " (expected " << csv_num(-1.0 / cls.index) << ")\n";
      } else if (cls.kind == TailKind::GammaClass && cls.aux) {
        PiOptions po;
        po.g = cls.aux;
        po.alpha = cls.index;
        po.grid = opt.grid;
        const PiReport pi = pi_functional(dist.survival, dist.survival.lower_bound(), po);
        CsvFile csv(out("pi.csv"));
        csv.row({"x", "verdict", "value", "target"});
        for (const auto& [x, est] : pi.pi_limits) {
          const double target = pi.decreasing_route ? -std::log(x) : std::log(x);
          csv.row({csv_num(x), to_string(est.verdict), csv_num(est.value), csv_num(target)});
        }
        report << "pi check: " << (pi.passed ? "pass" : "fail") << "\n";
      }
    }

    if (cfg.command == Command::Evt || cfg.command == Command::Report) {
      const EvtDomain dom = domain_from_class(cls);
      report << "domain of attraction: " << dom.describe() << "\n";
      if (dom.kind != EvtDomainKind::None && dist.has_sampler()) {
        const auto [a_n, b_n] = normalizing_constants(dist, dom, cfg.n, opt);
        const auto maxima =
            simulate_maxima(dist, dom, cfg.n, cfg.blocks, cfg.seed, a_n, b_n);
        const double ks = ks_distance(maxima, dom);
        EvtReport evt;
        evt.domain = dom;
        evt.blocks = cfg.blocks;
        evt.seed = cfg.seed;
        evt.rows.push_back({cfg.n, a_n, b_n, ks});
        write_csv(evt, out("evt.csv"));
        write_maxima_csv(maxima, out("maxima.csv"));
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "evt: n=%ld blocks=%d a_n=%.10g b_n=%.10g ks=%.6g seed=%llu",
                      cfg.n, cfg.blocks, a_n, b_n, ks,
                      static_cast<unsigned long long>(cfg.seed));
        report << buf << "\n";
      } else if (cfg.command == Command::Evt && dom.kind != EvtDomainKind::None) {
        report << "evt: skipped (no sampler for " << dist.label << ")\n";
      }
    }

    return undetermined ? 2 : 0;
  } catch (const parse_error& e) {
    std::cerr << "error [parse]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tailvar
