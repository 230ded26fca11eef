#pragma once

// Field dump/load: flat row-major binary in the element type, or CSV with one
// line per row of the last dimension.

#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "stencilforge/errors.hpp"

namespace sf {

template <class T>
void save_binary(const std::string& path, std::span<const T> values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path);
}

template <class T>
std::vector<T> load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes % sizeof(T) != 0) throw Error(ErrorCode::Io, path + " size is not a multiple of the element size");
  std::vector<T> values(bytes / sizeof(T));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  return values;
}

// `row_length` values per line.
template <class T>
void save_csv(const std::string& path, std::span<const T> values, std::size_t row_length) {
  if (row_length == 0 || values.size() % row_length != 0) {
    throw Error(ErrorCode::ShapeMismatch, "CSV row length does not divide the field size");
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << values[i] << ((i + 1) % row_length == 0 ? '\n' : ',');
  }
}

template <class T>
std::vector<T> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::vector<T> values;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        values.push_back(static_cast<T>(std::stod(cell)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::Io, "bad number '" + cell + "' in " + path);
      }
    }
  }
  return values;
}

}  // namespace sf
