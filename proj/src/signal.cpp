#include "stlsmooth/signal.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "stlsmooth/error.hpp"

namespace stlsmooth {

Signal::Signal(SignalDims dims, std::vector<double> flat) : dims_(dims), data_(std::move(flat)) {
  if (dims_.q() == 0) throw DimensionError("signal samples must have positive length");
  if (data_.empty() || data_.size() % dims_.q() != 0) {
    throw DimensionError("signal data is not a whole number of samples of length " +
                         std::to_string(dims_.q()));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw NumericError("signal contains a non-finite value");
  }
}

namespace {

std::vector<double> flatten_samples(const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw DimensionError("signal needs at least one sample");
  std::vector<double> flat;
  for (const auto& s : samples) {
    if (s.size() != samples.front().size()) {
      throw DimensionError("signal samples have different lengths");
    }
    flat.insert(flat.end(), s.begin(), s.end());
  }
  return flat;
}

}  // namespace

Signal::Signal(const std::vector<std::vector<double>>& samples)
    : Signal(SignalDims{samples.empty() ? 0 : samples.front().size(), 0, 0},
             flatten_samples(samples)) {}

std::span<const double> Signal::sample(int t) const {
  if (t < 0 || t > last_time()) {
    throw HorizonError("time index " + std::to_string(t) + " outside [0," +
                       std::to_string(last_time()) + "]");
  }
  return std::span<const double>(data_).subspan(static_cast<std::size_t>(t) * q(), q());
}

Signal parse_signal_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("signal CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 2 || header[0] != "t") {
    throw IoError("signal CSV header must start with 't' followed by s0..s{q-1}");
  }
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] != "s" + std::to_string(i - 1)) {
      throw IoError("signal CSV column " + std::to_string(i) + " must be named s" +
                    std::to_string(i - 1) + ", found '" + header[i] + "'");
    }
  }
  const std::size_t q = header.size() - 1;

  std::vector<double> flat;
  int expected_t = 0;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != q + 1) {
      throw IoError("signal CSV row " + std::to_string(row) + " has " +
                    std::to_string(cells.size()) + " cells, expected " + std::to_string(q + 1));
    }
    try {
      std::size_t used = 0;
      const long t = std::stol(cells[0], &used);
      if (used != cells[0].size() || t != expected_t) {
        throw IoError("signal CSV row " + std::to_string(row) + ": expected t = " +
                      std::to_string(expected_t));
      }
      for (std::size_t i = 1; i <= q; ++i) {
        flat.push_back(std::stod(cells[i], &used));
        if (used != cells[i].size()) throw std::invalid_argument("trailing characters");
      }
    } catch (const std::logic_error&) {
      throw IoError("signal CSV row " + std::to_string(row) + " has a malformed number");
    }
    ++expected_t;
  }
  if (flat.empty()) throw IoError("signal CSV has no samples");
  return Signal(SignalDims{q, 0, 0}, std::move(flat));
}

Signal read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open signal file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_signal_csv(buf.str());
}

void write_signal_csv(const Signal& s, std::ostream& out) {
  out << "t";
  for (std::size_t i = 0; i < s.q(); ++i) out << ",s" << i;
  out << '\n';
  out << std::setprecision(17);
  for (int t = 0; t <= s.last_time(); ++t) {
    out << t;
    for (double v : s.sample(t)) out << ',' << v;
    out << '\n';
  }
}

}  // namespace stlsmooth
