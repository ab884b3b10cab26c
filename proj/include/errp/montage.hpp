#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace errp {

struct ScalpPos {
  double x = 0.0;  // unit-disc head coordinates, nose along +y
  double y = 0.0;
};

// 2D positions for the standard 10-10 names plus the 10-5 intermediate rows.
// Built from the equidistant sphere model: electrodes sit every 10% along the
// nasion-inion and ear-to-ear arcs, inner rows interpolate between the
// midline and the circumferential ring. Projection is azimuthal equidistant
// with the circumferential ring at radius 0.72.
class MontageTable {
 public:
  MontageTable() : table_(build()) {}

  ScalpPos lookup(const std::string& name) const {
    auto it = table_.find(name);
    if (it == table_.end())
      throw std::out_of_range("unknown channel name: " + name);
    return it->second;
  }

  bool contains(const std::string& name) const { return table_.count(name) != 0; }

  std::size_t size() const { return table_.size(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(table_.size());
    for (const auto& kv : table_) out.push_back(kv.first);
    return out;
  }

 private:
  static std::map<std::string, ScalpPos> build() {
    std::map<std::string, ScalpPos> t;
    const double pi = 3.14159265358979323846;

    auto place = [&](const std::string& name, double inc_deg, double az_deg) {
      // inclination from the vertex -> radius; azimuth 90 deg = front (+y)
      const double r = inc_deg / 100.0;
      double x = r * std::cos(az_deg * pi / 180.0);
      double y = r * std::sin(az_deg * pi / 180.0);
      if (std::abs(x) < 1e-12) x = 0.0;
      if (std::abs(y) < 1e-12) y = 0.0;
      t[name] = ScalpPos{x, y};
    };

    // midline, 10% steps from nasion (f = front-back fraction)
    const std::vector<std::pair<std::string, double>> midline = {
        {"Fpz", 0.1}, {"AFz", 0.2}, {"Fz", 0.3},  {"FCz", 0.4}, {"Cz", 0.5},
        {"CPz", 0.6}, {"Pz", 0.7},  {"POz", 0.8}, {"Oz", 0.9}};
    for (const auto& [name, f] : midline) {
      const double inc = std::abs(f - 0.5) * 180.0;
      place(name, inc, f <= 0.5 ? 90.0 : 270.0);
    }
    t["Cz"] = ScalpPos{0.0, 0.0};

    // circumferential ring at 72 deg inclination, 18 deg azimuth steps
    const std::vector<std::pair<std::string, double>> ring_left = {
        {"Fp1", 108}, {"AF7", 126}, {"F7", 144},  {"FT7", 162}, {"T7", 180},
        {"TP7", 198}, {"P7", 216},  {"PO7", 234}, {"O1", 252}};
    for (const auto& [name, az] : ring_left) {
      place(name, 72.0, az);
      // mirror to the right hemisphere: Fp1 -> Fp2, AF7 -> AF8, ...
      std::string rname = name;
      char& last = rname.back();
      last = (last == '1') ? '2' : (last == '7' ? '8' : last);
      place(rname, 72.0, 180.0 - az + 360.0 * (az > 270 ? 1 : 0));
    }

    // inner rows: interpolate between the midline electrode and the ring
    // terminus of the row. Lateral numbering 1,3,5 (left) / 2,4,6 (right).
    struct Row {
      const char* prefix;
      double f;            // front-back fraction
      std::vector<int> numbers;  // odd = left
    };
    const std::vector<Row> rows = {
        {"AF", 0.2, {3}},
        {"F", 0.3, {1, 3, 5}},
        {"FC", 0.4, {1, 3, 5}},
        {"C", 0.5, {1, 3, 5}},
        {"CP", 0.6, {1, 3, 5}},
        {"P", 0.7, {1, 3, 5}},
        {"PO", 0.8, {3}},
        // 10-5 intermediate rows
        {"AFF", 0.25, {1, 3, 5}},
        {"FFC", 0.35, {1, 3, 5}},
        {"FCC", 0.45, {1, 3, 5}},
        {"CCP", 0.55, {1, 3, 5}},
        {"CPP", 0.65, {1, 3, 5}},
        {"PPO", 0.75, {1, 3, 5}},
    };
    for (const Row& row : rows) {
      const double inc_z = std::abs(row.f - 0.5) * 180.0;
      const double az_mid = row.f <= 0.5 ? 90.0 : 270.0;
      const double az_term_left = 90.0 + row.f * 180.0;
      for (int n : row.numbers) {
        const double frac = (n + 1) / 8.0;  // 1 -> 1/4, 3 -> 1/2, 5 -> 3/4
        const double inc = inc_z + (72.0 - inc_z) * frac;
        double az_l = az_mid + (az_term_left - az_mid) * frac;
        if (row.f == 0.5) az_l = 180.0;  // C row runs straight laterally
        place(row.prefix + std::to_string(n), inc, az_l);
        const double az_r = az_l <= 180.0 ? 180.0 - az_l : 540.0 - az_l;
        place(row.prefix + std::to_string(n + 1), inc, az_r);
      }
    }

    // midline electrodes of the 10-5 intermediate rows
    const std::vector<std::pair<std::string, double>> midline5 = {
        {"AFFz", 0.25}, {"FFCz", 0.35}, {"FCCz", 0.45},
        {"CCPz", 0.55}, {"CPPz", 0.65}, {"PPOz", 0.75}};
    for (const auto& [name, f] : midline5) {
      place(name, std::abs(f - 0.5) * 180.0, f <= 0.5 ? 90.0 : 270.0);
    }

    return t;
  }

  std::map<std::string, ScalpPos> table_;
};

inline const MontageTable& standard_montage() {
  static const MontageTable table;
  return table;
}

inline ScalpPos montage_lookup(const std::string& name) {
  return standard_montage().lookup(name);
}

inline double montage_distance(const std::string& a, const std::string& b) {
  const ScalpPos pa = montage_lookup(a);
  const ScalpPos pb = montage_lookup(b);
  return std::hypot(pa.x - pb.x, pa.y - pb.y);
}

// Named channel sets used by the synthetic generator and the CLI.
inline std::vector<std::string> channel_set(const std::string& name) {
  if (name == "midline7")
    return {"Cz", "CPz", "FCz", "Fz", "Pz", "POz", "Fpz"};
  if (name == "std19")
    return {"Fp1", "Fp2", "F7", "F3", "Fz", "F4", "F8", "T7", "C3", "Cz",
            "C4", "T8", "P7", "P3", "Pz", "P4", "P8", "O1", "O2"};
  if (name == "std32")
    return {"Fp1", "Fpz", "Fp2", "F7", "F3", "Fz", "F4", "F8",
            "FC5", "FC1", "FCz", "FC2", "FC6", "T7", "C3", "Cz",
            "C4", "T8", "CP5", "CP1", "CPz", "CP2", "CP6", "P7",
            "P3", "Pz", "P4", "P8", "POz", "O1", "Oz", "O2"};
  if (name == "std64" || name == "ext96") {
    // std64: the classic 10-10 inventory; ext96: plus the 10-5 rows.
    std::vector<std::string> out = {
        "Fp1", "Fpz", "Fp2", "AF7", "AF3", "AFz", "AF4", "AF8",
        "F7",  "F5",  "F3",  "F1",  "Fz",  "F2",  "F4",  "F6",  "F8",
        "FT7", "FC5", "FC3", "FC1", "FCz", "FC2", "FC4", "FC6", "FT8",
        "T7",  "C5",  "C3",  "C1",  "Cz",  "C2",  "C4",  "C6",  "T8",
        "TP7", "CP5", "CP3", "CP1", "CPz", "CP2", "CP4", "CP6", "TP8",
        "P7",  "P5",  "P3",  "P1",  "Pz",  "P2",  "P4",  "P6",  "P8",
        "PO7", "PO3", "POz", "PO4", "PO8", "O1",  "Oz",  "O2"};
    if (name == "std64") {
      out.push_back("FFC1");
      out.push_back("FFC2");
      out.push_back("CCP1");
      return out;  // 64
    }
    for (const char* row : {"AFF", "FFC", "FCC", "CCP", "CPP", "PPO"}) {
      out.push_back(std::string(row) + "z");
      for (int n = 1; n <= 6; ++n) out.push_back(row + std::to_string(n));
    }
    return out;  // 61 + 42 = 103
  }
  throw std::invalid_argument("unknown channel set: " + name);
}

}  // namespace errp
