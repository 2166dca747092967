#include "nsse/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "nsse/error.hpp"
#include "nsse/version.hpp"

namespace nsse {

namespace {

void header(std::ostream& out, const char* kind, const char* columns, const Metadata& params) {
  out << "# tool = nsse " << kVersion << "\n";
  out << "# dataset = " << kind << "\n";
  out << "# columns = " << columns << "\n";
  out << "# unit.detuning = gamma\n";
  out << "# unit.time = tau_natural\n";
  out << "# unit.length = lambda0\n";
  out << "# unit.velocity = v_recoil\n";
  out << "# unit.angle = degrees (theta between photon direction and front motion)\n";
  for (const auto& [k, v] : params) out << "# " << k << " = " << v << "\n";
  out << columns << "\n";
}

}  // namespace

std::string format_value(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

void write_spectrum_csv(std::ostream& out, const SpectrumDataset& ds, const Metadata& params) {
  Metadata meta = params;
  meta.emplace_back("normalization", to_string(ds.normalization));
  header(out, "spectrum", "detuning_gamma,q_norm,lorentzian_ref", meta);
  for (std::size_t i = 0; i < ds.detunings.size(); ++i)
    out << format_value(ds.detunings[i]) << ',' << format_value(ds.values[i]) << ','
        << format_value(ds.lorentzian_ref[i]) << '\n';
}

void write_angular_csv(std::ostream& out, const AngularDataset& ds, const Metadata& params) {
  Metadata meta = params;
  meta.emplace_back("normalization", ds.mean_normalized ? "mean" : "raw");
  header(out, "angular", "t_tau_nat,theta_deg,p_reduced", meta);
  const double deg = 180.0 / 3.14159265358979323846;
  for (std::size_t i = 0; i < ds.times.size(); ++i)
    for (std::size_t j = 0; j < ds.thetas.size(); ++j)
      out << format_value(ds.times[i] / ds.tau_natural) << ',' << format_value(ds.thetas[j] * deg) << ','
          << format_value(ds.values[i][j]) << '\n';
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path() && !fs::exists(target.parent_path()))
    throw InvalidArgument("out: directory '" + target.parent_path().string() + "' does not exist");
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw InvalidArgument("out: cannot write '" + tmp.string() + "'");
    f << contents;
    if (!f) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace nsse
