#include "fwm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fwm {
namespace io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

}  // namespace

void write_diagonal_series_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream f = open_out(path);
    f << "t,cell,re_psi_omega,im_psi_omega,re_psi_e,im_psi_e\n";
    for (const auto& s : traj.snapshots) {
        for (int l = 0; l < s.lattice.M; ++l) {
            f << format_double(s.t) << ',' << l << ',' << format_double(s.psi_omega(l, l).real())
              << ',' << format_double(s.psi_omega(l, l).imag()) << ','
              << format_double(s.psi_e(l, l).real()) << ',' << format_double(s.psi_e(l, l).imag())
              << '\n';
        }
    }
}

void write_intensity_series_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream f = open_out(path);
    f << "t,cell,I_omega1,I_omega2,I_e1,I_e2\n";
    for (const auto& s : traj.snapshots) {
        const obs::IntensityProfile p = obs::intensities(s);
        for (int l = 0; l < s.lattice.M; ++l) {
            f << format_double(s.t) << ',' << l << ',' << format_double(p.i_omega1[l]) << ','
              << format_double(p.i_omega2[l]) << ',' << format_double(p.i_e1[l]) << ','
              << format_double(p.i_e2[l]) << '\n';
        }
    }
}

void write_grid_csv(const TwoPhotonState& s, const std::string& path) {
    std::ofstream f = open_out(path);
    f << "l,lprime,re_psi_omega,im_psi_omega,re_psi_e,im_psi_e\n";
    for (int l = 0; l < s.lattice.M; ++l) {
        for (int lp = 0; lp < s.lattice.M; ++lp) {
            f << l << ',' << lp << ',' << format_double(s.psi_omega(l, lp).real()) << ','
              << format_double(s.psi_omega(l, lp).imag()) << ','
              << format_double(s.psi_e(l, lp).real()) << ','
              << format_double(s.psi_e(l, lp).imag()) << '\n';
        }
    }
}

TwoPhotonState read_grid_csv(const std::string& path, const Lattice& lat, double t) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("grid csv: missing header: " + path);
    TwoPhotonState s{lat, Grid::Zero(lat.M, lat.M), Grid::Zero(lat.M, lat.M), t};
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        auto next = [&]() {
            if (!std::getline(row, tok, ',')) throw std::runtime_error("grid csv: short row: " + line);
            return tok;
        };
        const int l = std::stoi(next());
        const int lp = std::stoi(next());
        if (l < 0 || l >= lat.M || lp < 0 || lp >= lat.M)
            throw std::runtime_error("grid csv: cell index outside lattice: " + line);
        const double rw = std::stod(next());
        const double iw = std::stod(next());
        const double re = std::stod(next());
        const double ie = std::stod(next());
        s.psi_omega(l, lp) = complexd(rw, iw);
        s.psi_e(l, lp) = complexd(re, ie);
    }
    return s;
}

void write_gnuplot_script(const std::string& path, const std::string& diag_csv,
                          const std::string& intensity_csv, const std::string& grid_csv) {
    std::ofstream f = open_out(path);
    f << "# Companion plots for the emitted CSV data (run: gnuplot <this file>).\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "\n"
         "set terminal pngcairo size 900,600\n"
         "set output 'diagonal_final.png'\n"
         "set xlabel 'cell'\n"
         "set ylabel '|psi| on the diagonal'\n"
         "last_t = system(\"tail -n 1 '" << diag_csv << "' | cut -d, -f1\")\n"
         "plot '" << diag_csv << "' using 2:(column(1) == real(last_t) ? "
         "sqrt($3**2 + $4**2) : NaN) with linespoints title 'pump pair', \\\n"
         "     '" << diag_csv << "' using 2:(column(1) == real(last_t) ? "
         "sqrt($5**2 + $6**2) : NaN) with linespoints title 'generated pair'\n"
         "\n"
         "set output 'intensity_map.png'\n"
         "set xlabel 't'\n"
         "set ylabel 'cell'\n"
         "set view map\n"
         "splot '" << intensity_csv << "' using 1:2:3 with points pt 5 ps 1.2 palette "
         "title 'I_{omega1}'\n"
         "\n"
         "set output 'grid_final.png'\n"
         "set xlabel 'l'\n"
         "set ylabel 'lprime'\n"
         "splot '" << grid_csv << "' using 1:2:(sqrt($3**2 + $4**2)) with points pt 5 ps 1.6 "
         "palette title '|psi_{omega}|'\n";
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config " + path + " line " + std::to_string(lineno) +
                                     ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config " + path + " line " + std::to_string(lineno) +
                                     ": empty key");
        kv[key] = val;
    }
    return kv;
}

}  // namespace io
}  // namespace fwm
