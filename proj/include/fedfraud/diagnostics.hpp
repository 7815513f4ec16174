#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fedfraud {

using WarningHandler = std::function<void(const std::string&)>;

/// Reports a recoverable condition (capped resample, skipped client, ...).
/// Default handler prints to stderr; calls are serialized.
void warn(const std::string& message);

/// Replaces the process-wide handler and returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);

/// Collects warnings for the lifetime of the object.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
  WarningHandler previous_;
};

}  // namespace fedfraud
