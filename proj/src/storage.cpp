#include "entrex/storage.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>

#include "entrex/error.hpp"

namespace entrex::platform {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void storage_failure(const std::string& what, const fs::path& path) {
    throw Error(ErrorCode::StorageError,
                what + " " + path.string() + ": " + std::strerror(errno));
}

class Fd {
public:
    explicit Fd(int fd) : fd_(fd) {}
    ~Fd() {
        if (fd_ >= 0) ::close(fd_);
    }
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    int get() const { return fd_; }
    int release() { return std::exchange(fd_, -1); }

private:
    int fd_;
};

void write_all(int fd, std::string_view data, const fs::path& path) {
    while (!data.empty()) {
        const ssize_t n = ::write(fd, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            storage_failure("cannot write", path);
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
}

void sync_directory(const fs::path& dir) {
    Fd fd(::open(dir.c_str(), O_RDONLY | O_DIRECTORY));
    if (fd.get() >= 0) ::fsync(fd.get());
}

std::string temp_suffix() {
    static std::atomic<unsigned long> counter{0};
    return ".tmp." + std::to_string(::getpid()) + "." + std::to_string(++counter);
}

}  // namespace

void atomic_write(const fs::path& target, std::string_view contents,
                  const StorageOptions& options) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) {
        throw Error(ErrorCode::StorageError,
                    "cannot create " + target.parent_path().string() + ": " + ec.message());
    }
    fs::path temp = target;
    temp += temp_suffix();
    {
        Fd fd(::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644));
        if (fd.get() < 0) storage_failure("cannot create", temp);
        write_all(fd.get(), contents, temp);
        if (options.fsync && ::fsync(fd.get()) != 0) storage_failure("cannot sync", temp);
        if (::close(fd.release()) != 0) storage_failure("cannot close", temp);
    }
    if (options.after_temp_write) options.after_temp_write(target);
    if (::rename(temp.c_str(), target.c_str()) != 0) {
        const int saved = errno;
        ::unlink(temp.c_str());
        errno = saved;
        storage_failure("cannot rename onto", target);
    }
    if (options.fsync) sync_directory(target.parent_path());
}

void append_line(const fs::path& target, std::string_view line, const StorageOptions& options) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) {
        throw Error(ErrorCode::StorageError,
                    "cannot create " + target.parent_path().string() + ": " + ec.message());
    }
    Fd fd(::open(target.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644));
    if (fd.get() < 0) storage_failure("cannot open", target);
    std::string data(line);
    data += '\n';
    write_all(fd.get(), data, target);
    if (options.fsync && ::fsync(fd.get()) != 0) storage_failure("cannot sync", target);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::StorageError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace entrex::platform
