#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stlsmooth {

/// Layout of a composite sample s_t = [y_t; x_t; u_t].
struct SignalDims {
  std::size_t p = 0;  // outputs
  std::size_t n = 0;  // states
  std::size_t m = 0;  // controls
  std::size_t q() const { return p + n + m; }
  friend bool operator==(const SignalDims&, const SignalDims&) = default;
};

/// Finite sequence of composite samples indexed t = 0..T.
class Signal {
 public:
  /// `flat` holds (T+1) samples of length dims.q(), sample-major.
  Signal(SignalDims dims, std::vector<double> flat);
  /// Samples of arbitrary content; the layout is recorded as all-output.
  explicit Signal(const std::vector<std::vector<double>>& samples);

  const SignalDims& dims() const { return dims_; }
  std::size_t q() const { return dims_.q(); }
  /// Last time index T.
  int last_time() const { return static_cast<int>(length()) - 1; }
  std::size_t length() const { return data_.size() / dims_.q(); }

  std::span<const double> sample(int t) const;
  std::span<const double> y(int t) const { return sample(t).subspan(0, dims_.p); }
  std::span<const double> x(int t) const { return sample(t).subspan(dims_.p, dims_.n); }
  std::span<const double> u(int t) const { return sample(t).subspan(dims_.p + dims_.n, dims_.m); }
  std::span<const double> data() const { return data_; }

 private:
  SignalDims dims_;
  std::vector<double> data_;
};

/// CSV with header "t,s0,...,s{q-1}", one row per time index, ascending t
/// starting at 0 with no gaps.
Signal parse_signal_csv(const std::string& text);
Signal read_signal_csv(const std::string& path);
void write_signal_csv(const Signal& s, std::ostream& out);

}  // namespace stlsmooth
