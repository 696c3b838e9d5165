#include "icec/xs_data.hpp"

#include "icec/error.hpp"
#include "icec/units.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

namespace icec {

CrossSectionTable CrossSectionTable::tabulated(std::vector<double> energies,
                                               std::vector<double> values, std::string label) {
  if (energies.size() != values.size())
    throw InputError(fmt::format("{}: {} energies but {} values", label, energies.size(), values.size()));
  if (energies.size() < 2)
    throw InputError(fmt::format("{}: a tabulated cross section needs at least two rows", label));
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (i > 0 && !(energies[i] > energies[i - 1]))
      throw InputError(fmt::format("{}: energies not strictly increasing at row {}", label, i + 1));
    if (!(values[i] >= 0.0))
      throw InputError(fmt::format("{}: negative cross section at row {}", label, i + 1));
  }
  CrossSectionTable t;
  t.lo_ = energies.front();
  t.hi_ = energies.back();
  t.energies_ = std::move(energies);
  t.values_ = std::move(values);
  t.label_ = std::move(label);
  return t;
}

CrossSectionTable CrossSectionTable::constant(double anchor_energy, double value, double window_lo,
                                              double window_hi, std::string label) {
  if (!(value >= 0.0))
    throw InputError(fmt::format("{}: negative cross section", label));
  if (!(window_lo <= anchor_energy && anchor_energy <= window_hi))
    throw InputError(fmt::format("{}: anchor energy outside its validity window", label));
  CrossSectionTable t;
  t.energies_ = {anchor_energy};
  t.values_ = {value};
  t.lo_ = window_lo;
  t.hi_ = window_hi;
  t.label_ = std::move(label);
  return t;
}

double CrossSectionTable::interpolate(double omega) const {
  if (energies_.empty())
    throw InputError("interpolation on an empty cross-section table");
  if (!contains(omega))
    throw RangeError(fmt::format("{}: photon energy {:.6f} eV outside table range [{:.6f}, {:.6f}] eV",
                                 label_, units::to_eV(omega), units::to_eV(lo_), units::to_eV(hi_)),
                     label_);
  if (is_constant())
    return values_.front();
  const auto it = std::upper_bound(energies_.begin(), energies_.end(), omega);
  if (it == energies_.end())
    return values_.back();
  const auto j = static_cast<std::size_t>(it - energies_.begin());
  const double t = (omega - energies_[j - 1]) / (energies_[j] - energies_[j - 1]);
  return values_[j - 1] + t * (values_[j] - values_[j - 1]);
}

namespace {

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos)
    return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

} // namespace

CrossSectionTable load_table(std::istream& in, const std::string& label) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> e;
  std::vector<double> v;
  double previous = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    if (!have_header) {
      std::string compact;
      std::remove_copy_if(line.begin(), line.end(), std::back_inserter(compact),
                          [](char c) { return c == ' ' || c == '\t'; });
      if (compact != "energy_eV,sigma_Mb")
        throw InputError(fmt::format("{}:{}: expected header 'energy_eV,sigma_Mb'", label, line_no));
      have_header = true;
      continue;
    }
    const std::size_t row = e.size() + 1;
    const auto comma = line.find(',');
    double energy = 0.0;
    double sigma = 0.0;
    try {
      if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
        throw std::invalid_argument("field count");
      std::size_t used = 0;
      const auto a = trim(line.substr(0, comma));
      const auto b = trim(line.substr(comma + 1));
      energy = std::stod(a, &used);
      if (used != a.size())
        throw std::invalid_argument("trailing characters");
      sigma = std::stod(b, &used);
      if (used != b.size())
        throw std::invalid_argument("trailing characters");
    } catch (const std::logic_error&) {
      throw InputError(fmt::format("{}:{}: malformed row {}: '{}'", label, line_no, row, line));
    }
    if (!e.empty() && !(energy > previous))
      throw InputError(fmt::format("{}:{}: energies not strictly increasing at row {}", label,
                                   line_no, row));
    if (!(sigma >= 0.0))
      throw InputError(fmt::format("{}:{}: negative cross section at row {}", label, line_no, row));
    previous = energy;
    e.push_back(units::eV(energy));
    v.push_back(units::megabarn(sigma));
  }
  if (!have_header)
    throw InputError(fmt::format("{}: missing header 'energy_eV,sigma_Mb'", label));
  return CrossSectionTable::tabulated(std::move(e), std::move(v), label);
}

CrossSectionTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError(fmt::format("cannot open cross-section table {}", path.string()));
  return load_table(in, path.string());
}

double pr_from_pi(double sigma_pi, double omega, double epsilon, double g_ratio) {
  if (!(epsilon > 0.0))
    throw InputError("detailed balance needs a positive electron energy");
  if (!(omega > 0.0))
    throw InputError("detailed balance needs a positive photon energy");
  const double c = units::speed_of_light_au;
  return omega * omega / (2.0 * epsilon * c * c) * g_ratio * sigma_pi;
}

ResolvedPiSet load_resolved_set(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw InputError(fmt::format("resolved cross-section directory {} not found", dir.string()));
  static const std::regex pattern(R"(pi_nu(\d+)_nup(\d+)\.csv)");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  ResolvedPiSet set;
  for (const auto& f : files) {
    std::smatch m;
    const auto name = f.filename().string();
    if (!std::regex_match(name, m, pattern))
      continue;
    set.emplace(std::pair{std::stoi(m[1]), std::stoi(m[2])}, load_table(f));
  }
  if (set.empty())
    throw InputError(fmt::format("no pi_nu*_nup*.csv tables in {}", dir.string()));
  return set;
}

namespace {

CrossSectionTable like(const CrossSectionTable& shape, std::vector<double> values, std::string label) {
  if (shape.is_constant())
    return CrossSectionTable::constant(shape.energies().front(), values.front(), shape.min_energy(),
                                       shape.max_energy(), std::move(label));
  return CrossSectionTable::tabulated(shape.energies(), std::move(values), std::move(label));
}

} // namespace

ResolvedPiSet resolve_branching_ratios(const CrossSectionTable& partial, int nu,
                                       const std::map<int, CrossSectionTable>& ratios) {
  if (ratios.empty())
    throw InputError("branching ratios: no final levels given");
  const auto& nodes = partial.energies();
  std::map<int, std::vector<double>> out;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double sum = 0.0;
    for (const auto& [nup, br] : ratios) {
      const double r = br.interpolate(nodes[k]);
      sum += r;
      out[nup].push_back(r * partial.values()[k]);
    }
    if (std::abs(sum - 1.0) > 1e-3)
      throw InputError(fmt::format("branching ratios sum to {:.6f} at {:.4f} eV (expected 1)", sum,
                                   units::to_eV(nodes[k])));
  }
  ResolvedPiSet set;
  for (auto& [nup, vals] : out)
    set.emplace(std::pair{nu, nup}, like(partial, std::move(vals), fmt::format("pi_nu{}_nup{}", nu, nup)));
  return set;
}

ResolvedPiSet resolve_v_ratios(const CrossSectionTable& partial, int nu,
                               std::span<const int> final_levels, std::span<const VRatio> ratios) {
  const auto n = static_cast<Eigen::Index>(final_levels.size());
  if (n == 0)
    throw InputError("v-ratios: no final levels given");
  auto column = [&](int level) {
    const auto it = std::find(final_levels.begin(), final_levels.end(), level);
    if (it == final_levels.end())
      throw InputError(fmt::format("v-ratio refers to unknown final level {}", level));
    return static_cast<Eigen::Index>(it - final_levels.begin());
  };

  const auto& nodes = partial.energies();
  std::vector<std::vector<double>> out(final_levels.size());
  const auto rows = static_cast<Eigen::Index>(ratios.size()) + 1;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
    for (std::size_t r = 0; r < ratios.size(); ++r) {
      const auto i = static_cast<Eigen::Index>(r);
      a(i, column(ratios[r].numerator)) += 1.0;
      a(i, column(ratios[r].denominator)) -= ratios[r].ratio.interpolate(nodes[k]);
    }
    a.row(rows - 1).setOnes();
    b(rows - 1) = partial.values()[k];

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < n)
      throw InputError(fmt::format("v-ratio system is singular at {:.4f} eV", units::to_eV(nodes[k])));
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    if ((a * x - b).norm() > 1e-9 * (1.0 + b.norm()))
      throw InputError(fmt::format("v-ratio system is inconsistent at {:.4f} eV", units::to_eV(nodes[k])));
    for (Eigen::Index j = 0; j < n; ++j)
      out[static_cast<std::size_t>(j)].push_back(std::max(0.0, x(j)));
  }
  ResolvedPiSet set;
  for (std::size_t j = 0; j < final_levels.size(); ++j)
    set.emplace(std::pair{nu, final_levels[j]},
                like(partial, std::move(out[j]), fmt::format("pi_nu{}_nup{}", nu, final_levels[j])));
  return set;
}

} // namespace icec
