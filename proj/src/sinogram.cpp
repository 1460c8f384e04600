#include "emtomo/sinogram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace emtomo {

static_assert(std::endian::native == std::endian::little,
              "sinogram container assumes a little-endian host");

Sinogram::Sinogram(int num_angles, int detector_cells, double fill)
    : num_angles_(num_angles), detector_cells_(detector_cells) {
  if (num_angles <= 0 || detector_cells <= 0) {
    throw std::invalid_argument("Sinogram: dimensions must be positive");
  }
  values_.assign(static_cast<std::size_t>(num_angles) * detector_cells, fill);
}

bool Sinogram::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool Sinogram::all_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

void write_sinogram(const Sinogram& sinogram, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_sinogram: cannot open " + path.string());
  nlohmann::json header = {{"num_angles", sinogram.num_angles()},
                           {"detector_cells", sinogram.detector_cells()}};
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(sinogram.values().data()),
            static_cast<std::streamsize>(sinogram.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write_sinogram: write failed for " + path.string());
}

Sinogram read_sinogram(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_sinogram: cannot open " + path.string());
  std::string header_line;
  if (!std::getline(in, header_line)) {
    throw std::runtime_error("read_sinogram: missing header in " + path.string());
  }
  const auto header = nlohmann::json::parse(header_line);
  Sinogram sinogram(header.at("num_angles").get<int>(),
                    header.at("detector_cells").get<int>());
  in.read(reinterpret_cast<char*>(sinogram.values().data()),
          static_cast<std::streamsize>(sinogram.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(sinogram.size() * sizeof(double))) {
    throw std::runtime_error("read_sinogram: truncated payload in " + path.string());
  }
  return sinogram;
}

}  // namespace emtomo
