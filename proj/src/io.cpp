#include "sensorplace/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "sensorplace/errors.hpp"

namespace sensorplace::io {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------- JSON

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

json index_list(const IndexList& idx) {
  json out = json::array();
  for (Index i : idx) out.push_back(i);
  return out;
}

IndexList index_list_from(const json& j) { return j.get<IndexList>(); }

}  // namespace

json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ComplexMatrix& m) {
  return {{"re", to_json(RealMatrix(m.real()))}, {"im", to_json(RealMatrix(m.imag()))}};
}

json to_json(const ComplexVector& v) {
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

RealMatrix real_matrix_from_json(const json& j) {
  return guarded("real matrix", [&] {
    require(j.is_array(), ErrorCode::Parse, "matrix must be an array of rows");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = rows ? static_cast<Index>(j.at(0).size()) : 0;
    RealMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      const json& row = j.at(static_cast<std::size_t>(i));
      require(row.is_array() && static_cast<Index>(row.size()) == cols, ErrorCode::Parse,
              "matrix row " + std::to_string(i) + " has the wrong length");
      for (Index c = 0; c < cols; ++c) m(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return m;
  });
}

ComplexMatrix complex_matrix_from_json(const json& j) {
  return guarded("complex matrix", [&] {
    const RealMatrix re = real_matrix_from_json(j.at("re"));
    const RealMatrix im = real_matrix_from_json(j.at("im"));
    require(re.rows() == im.rows() && re.cols() == im.cols(), ErrorCode::Parse,
            "real and imaginary parts differ in shape");
    ComplexMatrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
  });
}

ComplexVector complex_vector_from_json(const json& j) {
  return guarded("complex vector", [&] {
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    require(re.size() == im.size(), ErrorCode::Parse, "real and imaginary parts differ in length");
    ComplexVector v(static_cast<Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Index>(i)) = Complex(re[i], im[i]);
    return v;
  });
}

json to_json(const MechanicalSystem& system) {
  return {{"mass", to_json(system.mass)},
          {"stiffness", to_json(system.stiffness)},
          {"damping", to_json(system.damping)}};
}

MechanicalSystem system_from_json(const json& j) {
  return guarded("system", [&] {
    MechanicalSystem s;
    s.mass = real_matrix_from_json(j.at("mass"));
    s.stiffness = real_matrix_from_json(j.at("stiffness"));
    s.damping = real_matrix_from_json(j.at("damping"));
    s.validate();
    return s;
  });
}

json to_json(const ModalData& modal) {
  return {{"natural_freqs", std::vector<double>(modal.natural_freqs.begin(), modal.natural_freqs.end())},
          {"damping_ratios", std::vector<double>(modal.damping_ratios.begin(), modal.damping_ratios.end())},
          {"mode_shapes", to_json(modal.mode_shapes)},
          {"mass", to_json(modal.mass)}};
}

ModalData modal_from_json(const json& j) {
  return guarded("modal data", [&] {
    ModalData m;
    const auto w = j.at("natural_freqs").get<std::vector<double>>();
    const auto z = j.at("damping_ratios").get<std::vector<double>>();
    m.natural_freqs = Eigen::Map<const RealVector>(w.data(), static_cast<Index>(w.size()));
    m.damping_ratios = Eigen::Map<const RealVector>(z.data(), static_cast<Index>(z.size()));
    m.mode_shapes = real_matrix_from_json(j.at("mode_shapes"));
    m.mass = real_matrix_from_json(j.at("mass"));
    return m;
  });
}

json to_json(const FrfMatrix& frf) {
  return {{"omega", frf.omega},
          {"rows", index_list(frf.rows)},
          {"cols", index_list(frf.cols)},
          {"values", to_json(frf.values)}};
}

FrfMatrix frf_from_json(const json& j) {
  return guarded("FRF", [&] {
    FrfMatrix f;
    f.omega = j.at("omega").get<double>();
    f.rows = index_list_from(j.at("rows"));
    f.cols = index_list_from(j.at("cols"));
    f.values = complex_matrix_from_json(j.at("values"));
    f.validate();
    return f;
  });
}

json to_json(const MeasurementVector& y) {
  return {{"omega", y.omega}, {"sensors", index_list(y.sensors)}, {"values", to_json(y.values)}};
}

MeasurementVector measurement_from_json(const json& j) {
  return guarded("measurement", [&] {
    MeasurementVector y;
    y.omega = j.at("omega").get<double>();
    y.sensors = index_list_from(j.at("sensors"));
    y.values = complex_vector_from_json(j.at("values"));
    require(y.values.size() == static_cast<Index>(y.sensors.size()), ErrorCode::Parse,
            "measurement has a different number of values and sensors");
    return y;
  });
}

json to_json(const SensorSet& set) {
  json history = json::array();
  for (const SelectionStep& s : set.history)
    history.push_back({{"chosen", s.chosen}, {"objective", number_or_null(s.objective)}});
  return {{"selected", index_list(set.selected)},
          {"history", history},
          {"omega", set.omega ? json(*set.omega) : json(nullptr)},
          {"budget", set.budget},
          {"objective", number_or_null(set.objective)}};
}

json to_json(const GramNorms& norms) {
  return {{"frobenius", norms.frobenius},
          {"offdiag_frobenius", norms.offdiag_frobenius},
          {"max_offdiag", norms.max_offdiag}};
}

json to_json(const LassoSolution& solution) {
  return {{"x_bar_hat", to_json(solution.x_bar_hat)},
          {"x_hat", to_json(solution.x_hat)},
          {"objective", solution.objective},
          {"kkt_residual", solution.kkt_residual},
          {"iterations", solution.iterations},
          {"converged", solution.converged}};
}

json to_json(const ReconstructionMap& map) {
  return {{"omega", map.omega},
          {"sensor_set", index_list(map.sensor_set)},
          {"snr_db", number_or_null(map.snr_db)},
          {"seed", map.seed},
          {"nonconverged", map.nonconverged},
          {"max_iterations", map.max_iterations},
          {"max_kkt_residual", map.max_kkt_residual},
          {"od_mae", od_mae(map.values)},
          {"values", to_json(map.values)}};
}

namespace {

json series_json(const ConfigurationSeries& s) {
  json od = json::array();
  for (double v : s.od_mae) od.push_back(number_or_null(v));
  json sensors = json::array();
  for (const IndexList& l : s.sensors) sensors.push_back(index_list(l));
  return {{"gram_frobenius", s.gram_frobenius},
          {"gram_offdiag", s.gram_offdiag},
          {"selection_objective", s.selection_objective},
          {"od_mae", od},
          {"sensors", sensors}};
}

}  // namespace

json to_json(const SweepReport& report) {
  json greedy = json::array();
  for (const SensorSet& s : report.greedy) greedy.push_back(to_json(s));
  return {{"frequencies_hz", report.frequencies_hz},
          {"dominant_mode", report.dominant_mode},
          {"sensor_count", report.sensor_count},
          {"nonconverged", report.nonconverged},
          {"full", series_json(report.full)},
          {"optimal", series_json(report.optimal)},
          {"antinodal", series_json(report.antinodal)},
          {"greedy", greedy}};
}

// ---------------------------------------------------------------- CSV

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    std::string_view f = line.substr(start, end - start);
    std::size_t col = start + 1;
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) {
      f.remove_prefix(1);
      ++col;
    }
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
    out.push_back({f, col});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  /// Next non-blank line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }

  [[noreturn]] void error(std::size_t column, const std::string& message) const {
    throw ParseError(source_, line_no_, column, message);
  }

  double number(const Field& f) const {
    double v = 0.0;
    const char* first = f.text.data();
    const char* last = first + f.text.size();
    const auto res = std::from_chars(first, last, v);
    if (f.text.empty() || res.ec != std::errc() || res.ptr != last)
      error(f.column, "expected a number, got '" + std::string(f.text) + "'");
    return v;
  }

  Index index(const Field& f) const {
    long long v = 0;
    const char* first = f.text.data();
    const char* last = first + f.text.size();
    const auto res = std::from_chars(first, last, v);
    if (f.text.empty() || res.ec != std::errc() || res.ptr != last || v < 0)
      error(f.column, "expected a non-negative node index, got '" + std::string(f.text) + "'");
    return static_cast<Index>(v);
  }

  double header_omega(const std::string& line, std::string_view magic) const {
    if (line.rfind(magic, 0) != 0)
      error(1, "expected header '" + std::string(magic) + "<omega>'");
    const std::string_view rest = std::string_view(line).substr(magic.size());
    const Field f = split_fields(rest).front();
    return number({f.text, f.column + magic.size()});
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

constexpr std::string_view kFrfMagic = "# sensorplace-frf v1 omega=";
constexpr std::string_view kVectorMagic = "# sensorplace-vector v1 omega=";

}  // namespace

void write_frf_csv(std::ostream& out, const FrfMatrix& frf) {
  out << kFrfMagic << format_double(frf.omega) << '\n' << "sensor";
  for (Index c : frf.cols) out << ",re_" << c << ",im_" << c;
  out << '\n';
  for (std::size_t a = 0; a < frf.rows.size(); ++a) {
    out << frf.rows[a];
    for (std::size_t b = 0; b < frf.cols.size(); ++b) {
      const Complex v = frf.values(static_cast<Index>(a), static_cast<Index>(b));
      out << ',' << format_double(v.real()) << ',' << format_double(v.imag());
    }
    out << '\n';
  }
}

FrfMatrix read_frf_csv(std::istream& in, const std::string& source) {
  CsvReader csv(in, source);
  std::string line;
  if (!csv.next(line)) csv.error(0, "empty file");
  FrfMatrix frf;
  frf.omega = csv.header_omega(line, kFrfMagic);

  if (!csv.next(line)) csv.error(0, "missing column header");
  const std::vector<Field> head = split_fields(line);
  if (head.front().text != "sensor") csv.error(head.front().column, "first column must be 'sensor'");
  if (head.size() < 3 || head.size() % 2 == 0)
    csv.error(1, "expected sensor followed by re_<node>,im_<node> pairs");
  for (std::size_t k = 1; k < head.size(); k += 2) {
    const Field& re = head[k];
    const Field& im = head[k + 1];
    if (re.text.substr(0, 3) != "re_") csv.error(re.column, "expected re_<node>");
    if (im.text.substr(0, 3) != "im_") csv.error(im.column, "expected im_<node>");
    const Index node = csv.index({re.text.substr(3), re.column + 3});
    if (csv.index({im.text.substr(3), im.column + 3}) != node)
      csv.error(im.column, "imaginary column does not match the preceding real column");
    frf.cols.push_back(node);
  }

  std::vector<std::vector<Complex>> rows;
  while (csv.next(line)) {
    const std::vector<Field> f = split_fields(line);
    if (f.size() != head.size())
      csv.error(f.back().column, "expected " + std::to_string(head.size()) + " fields, got " +
                                     std::to_string(f.size()));
    frf.rows.push_back(csv.index(f[0]));
    std::vector<Complex> row;
    for (std::size_t k = 1; k < f.size(); k += 2) row.emplace_back(csv.number(f[k]), csv.number(f[k + 1]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) csv.error(0, "no sensor rows");

  frf.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(frf.cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < rows[a].size(); ++b)
      frf.values(static_cast<Index>(a), static_cast<Index>(b)) = rows[a][b];
  try {
    frf.validate();
  } catch (const Error& e) {
    throw ParseError(source, csv.line_no(), 0, e.what());
  }
  return frf;
}

void write_measurement_csv(std::ostream& out, const MeasurementVector& y) {
  out << kVectorMagic << format_double(y.omega) << "\nsensor,re,im\n";
  for (std::size_t k = 0; k < y.sensors.size(); ++k) {
    const Complex v = y.values(static_cast<Index>(k));
    out << y.sensors[k] << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  }
}

MeasurementVector read_measurement_csv(std::istream& in, const std::string& source) {
  CsvReader csv(in, source);
  std::string line;
  if (!csv.next(line)) csv.error(0, "empty file");
  MeasurementVector y;
  y.omega = csv.header_omega(line, kVectorMagic);

  if (!csv.next(line)) csv.error(0, "missing column header");
  const std::vector<Field> head = split_fields(line);
  if (head.size() != 3 || head[0].text != "sensor" || head[1].text != "re" || head[2].text != "im")
    csv.error(1, "expected header 'sensor,re,im'");

  std::vector<Complex> values;
  while (csv.next(line)) {
    const std::vector<Field> f = split_fields(line);
    if (f.size() != 3)
      csv.error(f.back().column, "expected 3 fields, got " + std::to_string(f.size()));
    const Index node = csv.index(f[0]);
    if (std::find(y.sensors.begin(), y.sensors.end(), node) != y.sensors.end())
      csv.error(f[0].column, "sensor " + std::to_string(node) + " repeated");
    y.sensors.push_back(node);
    values.emplace_back(csv.number(f[1]), csv.number(f[2]));
  }
  if (values.empty()) csv.error(0, "no sensor rows");
  y.values = Eigen::Map<const ComplexVector>(values.data(), static_cast<Index>(values.size()));
  return y;
}

void write_magnitude_grid_csv(std::ostream& out, const ComplexMatrix& m) {
  out << "row";
  for (Index c = 0; c < m.cols(); ++c) out << ',' << c;
  out << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    out << r;
    for (Index c = 0; c < m.cols(); ++c) out << ',' << format_double(std::abs(m(r, c)));
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "freq_hz,dominant_mode,sensor_count";
  for (const char* name : {"full", "optimal", "antinodal"})
    out << ',' << name << "_gram_fro," << name << "_gram_offdiag," << name << "_objective,"
        << name << "_od_mae";
  out << '\n';
  for (std::size_t k = 0; k < report.frequencies_hz.size(); ++k) {
    out << format_double(report.frequencies_hz[k]) << ',' << report.dominant_mode[k] << ','
        << report.sensor_count[k];
    for (const ConfigurationSeries* s : {&report.full, &report.optimal, &report.antinodal})
      out << ',' << format_double(s->gram_frobenius[k]) << ',' << format_double(s->gram_offdiag[k])
          << ',' << format_double(s->selection_objective[k]) << ','
          << (std::isnan(s->od_mae[k]) ? std::string() : format_double(s->od_mae[k]));
    out << '\n';
  }
}

void write_activation_csv(std::ostream& out, const SweepReport& report, Index n_dof) {
  out << "freq_hz";
  for (Index i = 0; i < n_dof; ++i) out << ",node_" << i;
  out << '\n';
  for (std::size_t k = 0; k < report.frequencies_hz.size(); ++k) {
    std::vector<int> active(static_cast<std::size_t>(n_dof), 0);
    for (Index s : report.greedy[k].selected) active[static_cast<std::size_t>(s)] = 1;
    out << format_double(report.frequencies_hz[k]);
    for (int a : active) out << ',' << a;
    out << '\n';
  }
}

// ---------------------------------------------------------------- files

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::Io, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  require(out.good(), ErrorCode::Io, "cannot write " + path.string());
  return out;
}

bool is_csv(const std::filesystem::path& path) { return path.extension() == ".csv"; }

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(path.string(), line, column, "invalid JSON");
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_output(path);
  out << text;
}

FrfMatrix load_frf(const std::filesystem::path& path) {
  if (!is_csv(path)) return frf_from_json(read_json_file(path));
  std::ifstream in = open_input(path);
  return read_frf_csv(in, path.string());
}

MeasurementVector load_measurement(const std::filesystem::path& path) {
  if (!is_csv(path)) return measurement_from_json(read_json_file(path));
  std::ifstream in = open_input(path);
  return read_measurement_csv(in, path.string());
}

}  // namespace sensorplace::io
