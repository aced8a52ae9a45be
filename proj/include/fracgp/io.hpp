#pragma once

// Trace CSV and report files. Floats are serialized with 17 significant
// digits so reruns are byte-identical.

#include <string>
#include <vector>

#include "fracgp/config.hpp"
#include "fracgp/diagnostics.hpp"
#include "fracgp/ts_loop.hpp"

namespace fracgp {

std::string format_g17(double v);

// Header: t,x0..x{d-1},y,r_inst,r_cum,k_var,sigma2,C_t,saturated
std::string trace_to_csv(const RegretTrace& trace);
RegretTrace trace_from_csv_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string gamma_report_csv(const CumvarReport& report);

json run_metadata(const ExperimentConfig& config, const RegretTrace& trace,
                  const RKHSFunction& objective);

}  // namespace fracgp
