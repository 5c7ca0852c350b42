#pragma once

// Field-tracking reader over a JSON object. Every accessed key is recorded;
// finish() reports the rest as unknown fields.

#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "iotcarbon/error.h"
#include "iotcarbon/schema_io.h"

namespace iotcarbon::detail {

class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& object, std::string where,
               const ReadOptions& options)
      : object_(object), where_(std::move(where)), options_(options) {
    if (!object_.is_object()) throw ParseError(where_ + ": expected an object");
  }

  bool has(const std::string& key) const { return object_.contains(key); }

  const nlohmann::json& raw(const std::string& key) {
    used_.insert(key);
    if (!object_.contains(key))
      throw ParseError(where_ + ": missing field '" + key + "'");
    return object_.at(key);
  }

  template <class T>
  T required(const std::string& key) {
    return convert<T>(raw(key), key);
  }

  template <class T>
  std::optional<T> optional(const std::string& key) {
    used_.insert(key);
    if (!object_.contains(key) || object_.at(key).is_null())
      return std::nullopt;
    return convert<T>(object_.at(key), key);
  }

  template <class T>
  T value_or(const std::string& key, T fallback) {
    auto v = optional<T>(key);
    return v ? *v : fallback;
  }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  void finish() const {
    for (const auto& [key, _] : object_.items()) {
      if (used_.count(key)) continue;
      auto message = where_ + ": unknown field '" + key + "'";
      if (options_.strict) throw ParseError(message);
      if (options_.diag) options_.diag->warn(message);
    }
  }

 private:
  template <class T>
  T convert(const nlohmann::json& value, const std::string& key) const {
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!value.is_number()) throw ParseError("");
        return value.get<double>();
      } else if constexpr (std::is_same_v<T, int>) {
        if (!value.is_number_integer()) throw ParseError("");
        return value.get<int>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!value.is_string()) throw ParseError("");
        return value.get<std::string>();
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!value.is_boolean()) throw ParseError("");
        return value.get<bool>();
      } else {
        return value.get<T>();
      }
    } catch (const std::exception&) {
      throw ParseError(where_ + ": field '" + key + "' has the wrong type");
    }
  }

  const nlohmann::json& object_;
  std::string where_;
  ReadOptions options_;
  std::set<std::string> used_;
};

}  // namespace iotcarbon::detail
