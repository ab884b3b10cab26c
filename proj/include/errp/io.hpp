#pragma once

#include <bit>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errp/types.hpp"

namespace errp {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian");

namespace io_detail {

using nlohmann::json;

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + p.string());
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("write failed: " + p.string());
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_f32_payload(const std::filesystem::path& p,
                              const std::vector<float>& v) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + p.string());
  f.write(reinterpret_cast<const char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(float)));
  if (!f) throw std::runtime_error("write failed: " + p.string());
}

inline std::vector<float> read_f32_payload(const std::filesystem::path& p,
                                           std::size_t expected_count) {
  std::ifstream f(p, std::ios::binary | std::ios::ate);
  if (!f) throw std::runtime_error("cannot open: " + p.string());
  const auto bytes = static_cast<std::size_t>(f.tellg());
  if (bytes != expected_count * sizeof(float)) {
    throw std::runtime_error("payload length mismatch: " + p.string() + " holds " +
                             std::to_string(bytes / sizeof(float)) +
                             " floats, header implies " +
                             std::to_string(expected_count));
  }
  std::vector<float> v(expected_count);
  f.seekg(0);
  f.read(reinterpret_cast<char*>(v.data()),
         static_cast<std::streamsize>(bytes));
  if (!f) throw std::runtime_error("read failed: " + p.string());
  return v;
}

// shortest round-trip formatting, used for all CSV numerics
inline std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline json parse_header(const std::filesystem::path& p) {
  json j;
  try {
    j = json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed header " + p.string() + ": " + e.what());
  }
  return j;
}

template <typename T>
T header_get(const json& j, const char* key, const std::filesystem::path& p) {
  if (!j.contains(key))
    throw std::runtime_error("malformed header " + p.string() +
                             ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed header " + p.string() + ": key '" +
                             key + "': " + e.what());
  }
}

}  // namespace io_detail

// A recording is stored as three files next to each other:
//   <base>.json        header (subject, session, paradigm, rate, channels, n_samples)
//   <base>.f32         little-endian float32 payload, channel-major
//   <base>.events.csv  sample_index,label,kind
inline void save_recording(const Recording& rec, const std::filesystem::path& base) {
  namespace d = io_detail;
  rec.validate();
  d::json header = {
      {"format_version", 1},
      {"subject_id", rec.subject_id},
      {"session_id", rec.session_id},
      {"paradigm", to_string(rec.paradigm)},
      {"sample_rate_hz", rec.sample_rate_hz},
      {"channel_names", rec.channel_names},
      {"n_samples", rec.n_samples()},
  };
  d::write_file(base.string() + ".json", header.dump(2) + "\n");

  std::vector<float> payload;
  payload.reserve(static_cast<std::size_t>(rec.data.size()));
  for (Eigen::Index c = 0; c < rec.n_channels(); ++c)
    for (Eigen::Index s = 0; s < rec.n_samples(); ++s)
      payload.push_back(static_cast<float>(rec.data(c, s)));
  d::write_f32_payload(base.string() + ".f32", payload);

  std::ostringstream csv;
  csv << "sample_index,label,kind\n";
  for (const Event& e : rec.events)
    csv << e.sample_index << ',' << to_string(e.label) << ',' << e.kind << '\n';
  d::write_file(base.string() + ".events.csv", csv.str());
}

inline Recording load_recording(const std::filesystem::path& base) {
  namespace d = io_detail;
  const std::filesystem::path hp = base.string() + ".json";
  const d::json j = d::parse_header(hp);

  Recording rec;
  rec.subject_id = d::header_get<std::string>(j, "subject_id", hp);
  rec.session_id = d::header_get<std::string>(j, "session_id", hp);
  rec.paradigm = paradigm_from_string(d::header_get<std::string>(j, "paradigm", hp));
  rec.sample_rate_hz = d::header_get<double>(j, "sample_rate_hz", hp);
  rec.channel_names = d::header_get<std::vector<std::string>>(j, "channel_names", hp);
  const auto n_samples = d::header_get<std::int64_t>(j, "n_samples", hp);
  if (n_samples < 0) throw std::runtime_error("malformed header: negative n_samples");

  const std::size_t n_ch = rec.channel_names.size();
  const auto payload = d::read_f32_payload(
      base.string() + ".f32", n_ch * static_cast<std::size_t>(n_samples));
  rec.data.resize(static_cast<Eigen::Index>(n_ch), n_samples);
  std::size_t k = 0;
  for (std::size_t c = 0; c < n_ch; ++c)
    for (std::int64_t s = 0; s < n_samples; ++s)
      rec.data(static_cast<Eigen::Index>(c), s) = payload[k++];

  std::istringstream csv(d::read_file(base.string() + ".events.csv"));
  std::string line;
  bool first = true;
  while (std::getline(csv, line)) {
    if (first) {
      first = false;
      continue;  // header row
    }
    if (line.empty() || line == "\r") continue;
    const auto cols = d::split_csv_line(line);
    if (cols.size() != 3)
      throw std::runtime_error("malformed events row: " + line);
    Event e;
    e.sample_index = std::stoll(cols[0]);
    e.label = label_from_string(cols[1]);
    e.kind = cols[2];
    rec.events.push_back(e);
  }
  rec.validate();
  return rec;
}

// Epochs: <base>.json header, <base>.f32 trial-major tensor (each trial
// channel-major), <base>.trials.csv with label,subject_id,session_id,paradigm,uid.
inline void save_epochs(const EpochSet& es, const std::filesystem::path& base) {
  namespace d = io_detail;
  es.validate();
  d::json header = {
      {"format_version", 1},
      {"window_ms", {es.window_start_ms, es.window_end_ms}},
      {"sample_rate_hz", es.sample_rate_hz},
      {"channel_names", es.channel_names},
      {"n_trials", es.n_trials()},
      {"n_samples", es.n_samples()},
  };
  d::write_file(base.string() + ".json", header.dump(2) + "\n");

  std::vector<float> payload;
  payload.reserve(es.n_trials() * static_cast<std::size_t>(es.n_channels()) *
                  static_cast<std::size_t>(es.n_samples()));
  for (const Matrix& t : es.trials)
    for (Eigen::Index c = 0; c < t.rows(); ++c)
      for (Eigen::Index s = 0; s < t.cols(); ++s)
        payload.push_back(static_cast<float>(t(c, s)));
  d::write_f32_payload(base.string() + ".f32", payload);

  std::ostringstream csv;
  csv << "label,subject_id,session_id,paradigm,uid\n";
  for (std::size_t i = 0; i < es.n_trials(); ++i) {
    const TrialMeta& m = es.meta[i];
    csv << to_string(es.labels[i]) << ',' << m.subject_id << ',' << m.session_id
        << ',' << to_string(m.paradigm) << ',' << m.uid << '\n';
  }
  d::write_file(base.string() + ".trials.csv", csv.str());
}

inline EpochSet load_epochs(const std::filesystem::path& base) {
  namespace d = io_detail;
  const std::filesystem::path hp = base.string() + ".json";
  const d::json j = d::parse_header(hp);

  EpochSet es;
  const auto window = d::header_get<std::vector<double>>(j, "window_ms", hp);
  if (window.size() != 2) throw std::runtime_error("malformed header: window_ms");
  es.window_start_ms = window[0];
  es.window_end_ms = window[1];
  es.sample_rate_hz = d::header_get<double>(j, "sample_rate_hz", hp);
  es.channel_names = d::header_get<std::vector<std::string>>(j, "channel_names", hp);
  const auto n_trials = d::header_get<std::int64_t>(j, "n_trials", hp);
  const auto n_samples = d::header_get<std::int64_t>(j, "n_samples", hp);
  if (n_trials < 0 || n_samples < 0)
    throw std::runtime_error("malformed header: negative counts");

  const std::size_t n_ch = es.channel_names.size();
  const auto payload = d::read_f32_payload(
      base.string() + ".f32",
      static_cast<std::size_t>(n_trials) * n_ch * static_cast<std::size_t>(n_samples));
  std::size_t k = 0;
  es.trials.reserve(static_cast<std::size_t>(n_trials));
  for (std::int64_t i = 0; i < n_trials; ++i) {
    Matrix t(static_cast<Eigen::Index>(n_ch), n_samples);
    for (std::size_t c = 0; c < n_ch; ++c)
      for (std::int64_t s = 0; s < n_samples; ++s)
        t(static_cast<Eigen::Index>(c), s) = payload[k++];
    es.trials.push_back(std::move(t));
  }

  std::istringstream csv(d::read_file(base.string() + ".trials.csv"));
  std::string line;
  bool first = true;
  while (std::getline(csv, line)) {
    if (first) {
      first = false;
      continue;
    }
    if (line.empty() || line == "\r") continue;
    const auto cols = d::split_csv_line(line);
    if (cols.size() != 5)
      throw std::runtime_error("malformed trials row: " + line);
    es.labels.push_back(label_from_string(cols[0]));
    TrialMeta m;
    m.subject_id = cols[1];
    m.session_id = cols[2];
    m.paradigm = paradigm_from_string(cols[3]);
    m.uid = cols[4];
    es.meta.push_back(std::move(m));
  }
  if (es.labels.size() != static_cast<std::size_t>(n_trials))
    throw std::runtime_error("trials csv row count does not match header n_trials");
  es.validate();
  return es;
}

}  // namespace errp
