#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "errp/types.hpp"

namespace errp {

struct StandardizerConfig {
  double decay = 0.999;
  double epsilon = 1e-4;  // floor on the running standard deviation

  void validate() const {
    if (!(decay > 0.0 && decay < 1.0))
      throw std::invalid_argument("decay must lie in (0,1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  }
};

struct EpochConfig {
  double start_ms = -500.0;
  double end_ms = 1000.0;

  void validate() const {
    if (!(start_ms < end_ms))
      throw std::invalid_argument("epoch start must precede end");
  }
};

// Subtracts the across-channel mean at every sample index.
inline Recording common_average_reference(const Recording& rec) {
  if (rec.n_channels() == 0)
    throw std::invalid_argument("common_average_reference: empty recording");
  Recording out = rec;
  const Eigen::RowVectorXd mean = rec.data.colwise().mean();
  out.data = rec.data.rowwise() - mean;
  return out;
}

namespace resample_detail {

// Hamming-windowed sinc low-pass, unit DC gain, odd length.
inline std::vector<double> lowpass_kernel(double cutoff_norm, int n_taps) {
  const double pi = 3.14159265358979323846;
  std::vector<double> h(static_cast<std::size_t>(n_taps));
  const int half = n_taps / 2;
  double sum = 0.0;
  for (int i = 0; i < n_taps; ++i) {
    const int m = i - half;
    const double sinc = m == 0 ? 2.0 * cutoff_norm
                               : std::sin(2.0 * pi * cutoff_norm * m) / (pi * m);
    const double w = 0.54 - 0.46 * std::cos(2.0 * pi * i / (n_taps - 1));
    h[static_cast<std::size_t>(i)] = sinc * w;
    sum += h[static_cast<std::size_t>(i)];
  }
  for (double& v : h) v /= sum;
  return h;
}

// Centered convolution with mirror padding; output length equals input length.
inline Eigen::VectorXd filter_centered(const Eigen::VectorXd& x,
                                       const std::vector<double>& h) {
  const Eigen::Index n = x.size();
  const int half = static_cast<int>(h.size()) / 2;
  auto reflect = [&](Eigen::Index i) {
    while (i < 0 || i >= n) {
      if (i < 0) i = -i;
      if (i >= n) i = 2 * (n - 1) - i;
    }
    return i;
  };
  Eigen::VectorXd y(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    double acc = 0.0;
    for (int k = 0; k < static_cast<int>(h.size()); ++k)
      acc += h[static_cast<std::size_t>(k)] * x(reflect(t + k - half));
    y(t) = acc;
  }
  return y;
}

// Windowed-sinc interpolation of an already band-limited signal at a
// fractional index.
inline double sinc_interp(const Eigen::VectorXd& x, double pos) {
  const double pi = 3.14159265358979323846;
  const Eigen::Index n = x.size();
  const int width = 32;  // taps each side
  const auto i0 = static_cast<Eigen::Index>(std::floor(pos));
  double acc = 0.0;
  for (Eigen::Index i = std::max<Eigen::Index>(0, i0 - width + 1);
       i <= std::min(n - 1, i0 + width); ++i) {
    const double d = pos - static_cast<double>(i);
    const double sinc = d == 0.0 ? 1.0 : std::sin(pi * d) / (pi * d);
    const double w = 0.5 + 0.5 * std::cos(pi * d / width);  // Hann taper
    acc += x(i) * sinc * w;
  }
  return acc;
}

}  // namespace resample_detail

// Downsamples to target_rate_hz. Anti-alias zero-phase low-pass (cutoff
// 0.45 x target rate, Hamming-windowed sinc, forward-backward) precedes
// decimation; event indices are rescaled with round-to-nearest.
inline Recording resample(const Recording& rec, double target_rate_hz) {
  if (!(target_rate_hz > 0.0))
    throw std::invalid_argument("resample: target rate must be > 0");
  if (target_rate_hz > rec.sample_rate_hz)
    throw std::invalid_argument("resample: upsampling not supported (target " +
                                std::to_string(target_rate_hz) + " > native " +
                                std::to_string(rec.sample_rate_hz) + ")");
  if (target_rate_hz == rec.sample_rate_hz) return rec;

  namespace d = resample_detail;
  const double ratio = target_rate_hz / rec.sample_rate_hz;
  const auto n_in = rec.n_samples();
  const auto n_out = static_cast<Eigen::Index>(
      std::floor(static_cast<double>(n_in) * ratio));

  // taps scale with the decimation factor; truncated for short signals
  int n_taps = static_cast<int>(std::ceil(20.0 / ratio)) | 1;
  n_taps = std::min(n_taps, 1001);
  const int max_taps = static_cast<int>(2 * (n_in > 1 ? n_in - 1 : 1) + 1);
  n_taps = std::min(n_taps, max_taps | 1);
  const double cutoff_norm = 0.45 * target_rate_hz / rec.sample_rate_hz;
  const auto kernel = d::lowpass_kernel(cutoff_norm, n_taps);

  Recording out = rec;
  out.sample_rate_hz = target_rate_hz;
  out.data.resize(rec.n_channels(), n_out);
  const double step = 1.0 / ratio;
  for (Eigen::Index c = 0; c < rec.n_channels(); ++c) {
    Eigen::VectorXd x = rec.data.row(c).transpose();
    x = d::filter_centered(x, kernel);
    x = d::filter_centered(x.reverse().eval(), kernel).reverse();
    for (Eigen::Index k = 0; k < n_out; ++k) {
      const double pos = static_cast<double>(k) * step;
      const double nearest = std::round(pos);
      if (std::abs(pos - nearest) < 1e-9 &&
          nearest < static_cast<double>(n_in)) {
        out.data(c, k) = x(static_cast<Eigen::Index>(nearest));
      } else {
        out.data(c, k) = d::sinc_interp(x, pos);
      }
    }
  }

  out.events = rec.events;
  for (Event& e : out.events) {
    const auto idx = static_cast<std::int64_t>(
        std::llround(static_cast<double>(e.sample_index) * ratio));
    e.sample_index = std::clamp<std::int64_t>(idx, 0, n_out > 0 ? n_out - 1 : 0);
  }
  return out;
}

// Electrode-wise exponential running standardization.
//   mu_t = (1-decay) x_t + decay mu_{t-1}
//   v_t  = (1-decay) (x_t - mu_t)^2 + decay v_{t-1}
//   out  = (x_t - mu_t) / max(sqrt(v_t), epsilon)
// with mu_{-1} = x_0 and v_{-1} = 1. State resets per recording.
inline Recording running_standardize(const Recording& rec,
                                     const StandardizerConfig& cfg = {}) {
  cfg.validate();
  Recording out = rec;
  const double a = 1.0 - cfg.decay;
  for (Eigen::Index c = 0; c < rec.n_channels(); ++c) {
    double mu = rec.n_samples() > 0 ? rec.data(c, 0) : 0.0;
    double v = 1.0;
    for (Eigen::Index t = 0; t < rec.n_samples(); ++t) {
      const double x = rec.data(c, t);
      mu = a * x + cfg.decay * mu;
      const double dev = x - mu;
      v = a * dev * dev + cfg.decay * v;
      out.data(c, t) = dev / std::max(std::sqrt(v), cfg.epsilon);
    }
  }
  return out;
}

// Cuts one trial per event over [event + start_ms, event + end_ms).
inline EpochSet epoch(const Recording& rec, const EpochConfig& cfg = {}) {
  cfg.validate();
  rec.validate();
  const auto offset = static_cast<Eigen::Index>(
      std::llround(cfg.start_ms * rec.sample_rate_hz / 1000.0));
  const auto count = static_cast<Eigen::Index>(std::llround(
      (cfg.end_ms - cfg.start_ms) * rec.sample_rate_hz / 1000.0));
  if (count <= 0) throw std::invalid_argument("epoch: window shorter than one sample");

  EpochSet es;
  es.window_start_ms = cfg.start_ms;
  es.window_end_ms = cfg.end_ms;
  es.sample_rate_hz = rec.sample_rate_hz;
  es.channel_names = rec.channel_names;
  for (std::size_t i = 0; i < rec.events.size(); ++i) {
    const Event& e = rec.events[i];
    const Eigen::Index start = e.sample_index + offset;
    if (start < 0 || start + count > rec.n_samples())
      throw std::out_of_range("epoch: window out of bounds for event " +
                              std::to_string(i) + " at sample " +
                              std::to_string(e.sample_index));
    es.trials.push_back(rec.data.middleCols(start, count));
    es.labels.push_back(e.label);
    TrialMeta m;
    m.subject_id = rec.subject_id;
    m.session_id = rec.session_id;
    m.paradigm = rec.paradigm;
    m.uid = rec.subject_id + "/" + rec.session_id + "/" + std::to_string(i) +
            "@" + std::to_string(e.sample_index);
    es.meta.push_back(std::move(m));
  }
  return es;
}

// Reduces and reorders the channel dimension to the given names.
inline EpochSet select_channels(const EpochSet& es,
                                const std::vector<std::string>& names) {
  std::vector<Eigen::Index> rows;
  rows.reserve(names.size());
  for (const std::string& n : names) {
    const auto it = std::find(es.channel_names.begin(), es.channel_names.end(), n);
    if (it == es.channel_names.end())
      throw std::invalid_argument("select_channels: unknown channel " + n);
    rows.push_back(static_cast<Eigen::Index>(it - es.channel_names.begin()));
  }
  EpochSet out = es;
  out.channel_names = names;
  for (std::size_t i = 0; i < es.trials.size(); ++i) {
    Matrix t(static_cast<Eigen::Index>(rows.size()), es.trials[i].cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
      t.row(static_cast<Eigen::Index>(r)) = es.trials[i].row(rows[r]);
    out.trials[i] = std::move(t);
  }
  return out;
}

// Per-classifier preprocessing preset covering the whole chain from a
// continuous recording to epochs.
struct PipelineConfig {
  bool car = true;
  double target_rate_hz = 0.0;  // 0 keeps the native rate
  bool standardize = false;     // on for the ConvNet path, off for rLDA
  StandardizerConfig standardizer{};
  EpochConfig epoch_window{};
  std::vector<std::string> channels;  // empty keeps all channels

  void validate() const {
    standardizer.validate();
    epoch_window.validate();
    if (target_rate_hz < 0.0)
      throw std::invalid_argument("target_rate_hz must be >= 0");
  }
};

inline EpochSet run_pipeline(const Recording& rec, const PipelineConfig& cfg) {
  cfg.validate();
  Recording r = cfg.car ? common_average_reference(rec) : rec;
  if (cfg.target_rate_hz > 0.0 && cfg.target_rate_hz != r.sample_rate_hz)
    r = resample(r, cfg.target_rate_hz);
  if (cfg.standardize) r = running_standardize(r, cfg.standardizer);
  EpochSet es = epoch(r, cfg.epoch_window);
  if (!cfg.channels.empty()) es = select_channels(es, cfg.channels);
  return es;
}

}  // namespace errp
