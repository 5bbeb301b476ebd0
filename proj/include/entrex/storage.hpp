#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

namespace entrex::platform {

/// Test hook invoked after the temporary file is fully written and before
/// it is renamed over the target.  Throwing from it simulates a crash at
/// that point.
using FaultHook = std::function<void(const std::filesystem::path& target)>;

struct StorageOptions {
    bool fsync = true;
    FaultHook after_temp_write;
};

/// Replaces `target` with `contents` via write-temp-then-rename, so readers
/// see either the old or the new file, never a mix.  Throws StorageError.
void atomic_write(const std::filesystem::path& target, std::string_view contents,
                  const StorageOptions& options = {});

/// Appends one line (a trailing '\n' is added).  Throws StorageError.
void append_line(const std::filesystem::path& target, std::string_view line,
                 const StorageOptions& options = {});

/// Whole file as a string.  Throws StorageError.
std::string read_file(const std::filesystem::path& path);

}  // namespace entrex::platform
