#include "fracgp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fracgp/common.hpp"

namespace fracgp {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trace_to_csv(const RegretTrace& trace) {
    std::ostringstream out;
    out << "t";
    for (int j = 0; j < trace.dim; ++j) out << ",x" << j;
    out << ",y,r_inst,r_cum,k_var,sigma2,C_t,saturated\n";
    for (int t = 1; t <= trace.completed; ++t) {
        const int i = t - 1;
        out << t;
        for (int j = 0; j < trace.dim; ++j)
            out << ',' << format_g17(trace.x[static_cast<size_t>(i) * trace.dim + j]);
        out << ',' << format_g17(trace.y[i]) << ',' << format_g17(trace.r_inst[i]) << ','
            << format_g17(trace.r_cum[i]) << ',' << format_g17(trace.k_var[i]) << ','
            << format_g17(trace.sigma2[i]) << ',' << format_g17(trace.c_t[i]) << ','
            << (trace.saturated[i] ? 1 : 0) << '\n';
    }
    return out.str();
}

RegretTrace trace_from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read trace file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw InputError("empty trace file: " + path);

    int dim = 0;
    {
        std::stringstream hs(header);
        std::string col;
        while (std::getline(hs, col, ','))
            if (col.size() > 1 && col[0] == 'x') ++dim;
    }
    if (dim < 1) throw InputError("trace header without x columns: " + path);

    RegretTrace tr;
    tr.dim = dim;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(std::stod(cell));
        if (static_cast<int>(cells.size()) != dim + 8)
            throw InputError("malformed trace row in " + path);
        int c = 1;
        for (int j = 0; j < dim; ++j) tr.x.push_back(cells[c++]);
        tr.y.push_back(cells[c++]);
        tr.r_inst.push_back(cells[c++]);
        tr.r_cum.push_back(cells[c++]);
        tr.k_var.push_back(cells[c++]);
        tr.sigma2.push_back(cells[c++]);
        tr.c_t.push_back(cells[c++]);
        tr.saturated.push_back(cells[c] != 0.0 ? 1 : 0);
    }
    tr.completed = static_cast<int>(tr.y.size());
    tr.T = tr.completed;
    return tr;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string gamma_report_csv(const CumvarReport& report) {
    std::ostringstream out;
    out << "T,gamma,cumvar,ratio\n";
    for (size_t i = 0; i < report.checkpoints.size(); ++i)
        out << report.checkpoints[i] << ',' << format_g17(report.gamma[i]) << ','
            << format_g17(report.avg_cumvar[i]) << ',' << format_g17(report.ratio[i]) << '\n';
    return out.str();
}

json run_metadata(const ExperimentConfig& config, const RegretTrace& trace,
                  const RKHSFunction& objective) {
    json j;
    j["config_hash"] = config_hash(config);
    j["tool_version"] = kToolVersion;
    j["seed"] = trace.seed;
    j["rng"] = kRngName;
    j["candidate_generator"] = generator_name(config.generator);
    j["alpha"] = trace.alpha;
    j["alpha_raw_inverse"] = trace.alpha_raw_inverse;
    j["alpha_clipped"] = trace.alpha_clipped;
    j["monitor_fired"] = trace.monitor_fired;
    j["worst_negative_regret"] = trace.worst_negative_regret;
    j["final_condition_estimate"] = trace.final_condition;
    j["completed_rounds"] = trace.completed;
    j["objective"] = objective_to_json(objective);
    if (!trace.error.empty()) j["error"] = trace.error;
    return j;
}

}  // namespace fracgp
