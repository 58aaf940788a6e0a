#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "eddy/la/types.hpp"

namespace eddy::la {

class MatrixMarketError : public std::runtime_error {
 public:
  MatrixMarketError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads a real coordinate Matrix Market file (general or symmetric).
/// Symmetric files are expanded to full storage; duplicate entries are summed.
SpMat mm_read(const std::filesystem::path& path);

/// Writes a general real coordinate file with 17 significant digits.
void mm_write(const std::filesystem::path& path, const SpMat& a);

/// Dense array variants, used for solution factors.
Eigen::MatrixXd mm_read_dense(const std::filesystem::path& path);
void mm_write_dense(const std::filesystem::path& path, const Eigen::MatrixXd& a);

}  // namespace eddy::la
