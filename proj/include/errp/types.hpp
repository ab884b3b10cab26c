#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace errp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Label : std::uint8_t { Error = 0, Correct = 1 };

enum class Paradigm : std::uint8_t { FlankerTask = 0, GuiControl = 1, Synthetic = 2 };

inline const char* to_string(Label l) {
  return l == Label::Error ? "Error" : "Correct";
}

inline Label label_from_string(const std::string& s) {
  if (s == "Error") return Label::Error;
  if (s == "Correct") return Label::Correct;
  throw std::invalid_argument("unknown label: " + s);
}

inline const char* to_string(Paradigm p) {
  switch (p) {
    case Paradigm::FlankerTask: return "FlankerTask";
    case Paradigm::GuiControl: return "GuiControl";
    case Paradigm::Synthetic: return "Synthetic";
  }
  return "Synthetic";
}

inline Paradigm paradigm_from_string(const std::string& s) {
  if (s == "FlankerTask") return Paradigm::FlankerTask;
  if (s == "GuiControl") return Paradigm::GuiControl;
  if (s == "Synthetic") return Paradigm::Synthetic;
  throw std::invalid_argument("unknown paradigm: " + s);
}

struct Event {
  std::int64_t sample_index = 0;
  Label label = Label::Correct;
  std::string kind;  // e.g. "response", "gui_step"
};

// Continuous multichannel signal in microvolts, channels x samples.
struct Recording {
  std::string subject_id;
  std::string session_id;
  Paradigm paradigm = Paradigm::Synthetic;
  double sample_rate_hz = 0.0;
  std::vector<std::string> channel_names;
  Matrix data;  // rows follow channel_names
  std::vector<Event> events;

  Eigen::Index n_channels() const { return data.rows(); }
  Eigen::Index n_samples() const { return data.cols(); }

  void validate() const;
};

struct TrialMeta {
  std::string subject_id;
  std::string session_id;
  Paradigm paradigm = Paradigm::Synthetic;
  std::string uid;  // unique trial id, used by the leakage guards
};

// Epoched trials. Each trial is a channels x samples matrix; trial order is
// chronological within its source recording.
struct EpochSet {
  std::vector<Matrix> trials;
  std::vector<Label> labels;
  double window_start_ms = 0.0;
  double window_end_ms = 0.0;
  double sample_rate_hz = 0.0;
  std::vector<std::string> channel_names;
  std::vector<TrialMeta> meta;

  std::size_t n_trials() const { return trials.size(); }
  Eigen::Index n_channels() const {
    return trials.empty() ? static_cast<Eigen::Index>(channel_names.size())
                          : trials[0].rows();
  }
  Eigen::Index n_samples() const {
    return trials.empty() ? 0 : trials[0].cols();
  }

  void validate() const;
};

inline void Recording::validate() const {
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("sample_rate_hz must be > 0");
  if (static_cast<std::size_t>(data.rows()) != channel_names.size())
    throw std::invalid_argument("data row count does not match channel_names");
  for (std::size_t i = 0; i < channel_names.size(); ++i)
    for (std::size_t j = i + 1; j < channel_names.size(); ++j)
      if (channel_names[i] == channel_names[j])
        throw std::invalid_argument("duplicate channel name: " + channel_names[i]);
  for (const Event& e : events)
    if (e.sample_index < 0 || e.sample_index >= n_samples())
      throw std::invalid_argument("event sample_index out of range");
}

inline void EpochSet::validate() const {
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("sample_rate_hz must be > 0");
  if (labels.size() != trials.size())
    throw std::invalid_argument("labels length does not match trial count");
  if (meta.size() != trials.size())
    throw std::invalid_argument("meta length does not match trial count");
  if (window_start_ms >= window_end_ms)
    throw std::invalid_argument("window start must precede end");
  const auto want = static_cast<Eigen::Index>(std::llround(
      (window_end_ms - window_start_ms) / 1000.0 * sample_rate_hz));
  for (const Matrix& t : trials) {
    if (static_cast<std::size_t>(t.rows()) != channel_names.size())
      throw std::invalid_argument("trial channel count does not match channel_names");
    if (t.cols() != want)
      throw std::invalid_argument("trial sample count does not match window");
  }
}

// Concatenates epoch sets that share channels, window and rate. Trial order
// follows the input order.
inline EpochSet concat_epochs(const std::vector<const EpochSet*>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_epochs: no inputs");
  EpochSet out = *parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const EpochSet& p = *parts[i];
    if (p.channel_names != out.channel_names ||
        p.sample_rate_hz != out.sample_rate_hz ||
        p.window_start_ms != out.window_start_ms ||
        p.window_end_ms != out.window_end_ms)
      throw std::invalid_argument("concat_epochs: incompatible epoch sets");
    out.trials.insert(out.trials.end(), p.trials.begin(), p.trials.end());
    out.labels.insert(out.labels.end(), p.labels.begin(), p.labels.end());
    out.meta.insert(out.meta.end(), p.meta.begin(), p.meta.end());
  }
  return out;
}

inline EpochSet concat_epochs(const std::vector<EpochSet>& parts) {
  std::vector<const EpochSet*> ptrs;
  ptrs.reserve(parts.size());
  for (const EpochSet& p : parts) ptrs.push_back(&p);
  return concat_epochs(ptrs);
}

// Subset of trials by index, preserving the given order.
inline EpochSet take_trials(const EpochSet& es, const std::vector<std::size_t>& idx) {
  EpochSet out;
  out.window_start_ms = es.window_start_ms;
  out.window_end_ms = es.window_end_ms;
  out.sample_rate_hz = es.sample_rate_hz;
  out.channel_names = es.channel_names;
  out.trials.reserve(idx.size());
  out.labels.reserve(idx.size());
  out.meta.reserve(idx.size());
  for (std::size_t i : idx) {
    if (i >= es.n_trials()) throw std::out_of_range("take_trials: index out of range");
    out.trials.push_back(es.trials[i]);
    out.labels.push_back(es.labels[i]);
    out.meta.push_back(es.meta[i]);
  }
  return out;
}

}  // namespace errp
