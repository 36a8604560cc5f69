#include "fpmine/gitio.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace fpmine {

namespace {

[[noreturn]] void die_child(const char* what) {
    ::perror(what);
    ::_exit(127);
}

struct Pipe {
    int fds[2] = {-1, -1};
    Pipe() {
        if (::pipe(fds) != 0) throw std::runtime_error("pipe() failed");
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    int read_end() const { return fds[0]; }
    int write_end() const { return fds[1]; }
    void close_read() {
        if (fds[0] >= 0) ::close(fds[0]);
        fds[0] = -1;
    }
    void close_write() {
        if (fds[1] >= 0) ::close(fds[1]);
        fds[1] = -1;
    }
    int take_read() {
        int fd = fds[0];
        fds[0] = -1;
        return fd;
    }
    int take_write() {
        int fd = fds[1];
        fds[1] = -1;
        return fd;
    }
};

pid_t spawn(const std::vector<std::string>& argv, int stdin_fd, int stdout_fd, int stderr_fd) {
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_t pid = ::fork();
    if (pid < 0) throw std::runtime_error("fork() failed");
    if (pid == 0) {
        if (stdin_fd >= 0 && ::dup2(stdin_fd, 0) < 0) die_child("dup2 stdin");
        if (stdout_fd >= 0 && ::dup2(stdout_fd, 1) < 0) die_child("dup2 stdout");
        if (stderr_fd >= 0 && ::dup2(stderr_fd, 2) < 0) die_child("dup2 stderr");
        for (int fd = 3; fd < 256; ++fd) ::close(fd);
        ::execvp(args[0], args.data());
        die_child("execvp");
    }
    return pid;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& argv, const std::string& stdin_data) {
    if (argv.empty()) throw std::runtime_error("run_command: empty argv");
    Pipe in, out, err;
    pid_t pid = spawn(argv, in.read_end(), out.write_end(), err.write_end());
    in.close_read();
    out.close_write();
    err.close_write();

    int in_fd = in.take_write();
    if (stdin_data.empty()) {
        ::close(in_fd);
        in_fd = -1;
    } else {
        ::fcntl(in_fd, F_SETFL, O_NONBLOCK);
    }

    CommandResult result;
    std::size_t written = 0;
    int out_fd = out.take_read();
    int err_fd = err.take_read();
    char buf[65536];

    while (out_fd >= 0 || err_fd >= 0 || in_fd >= 0) {
        struct pollfd fds[3];
        int n = 0;
        int idx_in = -1, idx_out = -1, idx_err = -1;
        if (in_fd >= 0) {
            idx_in = n;
            fds[n++] = {in_fd, POLLOUT, 0};
        }
        if (out_fd >= 0) {
            idx_out = n;
            fds[n++] = {out_fd, POLLIN, 0};
        }
        if (err_fd >= 0) {
            idx_err = n;
            fds[n++] = {err_fd, POLLIN, 0};
        }
        if (::poll(fds, static_cast<nfds_t>(n), -1) < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (idx_in >= 0 && (fds[idx_in].revents & (POLLOUT | POLLERR | POLLHUP))) {
            ssize_t w = ::write(in_fd, stdin_data.data() + written, stdin_data.size() - written);
            if (w > 0) written += static_cast<std::size_t>(w);
            if (w < 0 && errno != EAGAIN && errno != EINTR) {
                ::close(in_fd);
                in_fd = -1;
            } else if (written >= stdin_data.size()) {
                ::close(in_fd);
                in_fd = -1;
            }
        }
        auto drain = [&](int& fd, std::string& sink, int idx) {
            if (idx < 0 || fd < 0) return;
            if (fds[idx].revents & (POLLIN | POLLHUP | POLLERR)) {
                ssize_t r = ::read(fd, buf, sizeof buf);
                if (r > 0) {
                    sink.append(buf, static_cast<std::size_t>(r));
                } else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR)) {
                    ::close(fd);
                    fd = -1;
                }
            }
        };
        drain(out_fd, result.out, idx_out);
        drain(err_fd, result.err, idx_err);
    }
    if (in_fd >= 0) ::close(in_fd);

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// ---- GitCatFileBatch -------------------------------------------------------

GitCatFileBatch::GitCatFileBatch(const std::string& repo_path) {
    Pipe to_child, from_child;
    pid_ = spawn({"git", "-C", repo_path, "cat-file", "--batch"}, to_child.read_end(),
                 from_child.write_end(), -1);
    to_child.close_read();
    from_child.close_write();
    in_fd_ = to_child.take_write();
    out_fd_ = from_child.take_read();
}

GitCatFileBatch::~GitCatFileBatch() {
    if (in_fd_ >= 0) ::close(in_fd_);
    if (out_fd_ >= 0) ::close(out_fd_);
    if (pid_ > 0) {
        int status = 0;
        while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
        }
    }
}

bool GitCatFileBatch::read_line(std::string& line) {
    for (;;) {
        auto nl = buf_.find('\n');
        if (nl != std::string::npos) {
            line = buf_.substr(0, nl);
            buf_.erase(0, nl + 1);
            return true;
        }
        char chunk[65536];
        ssize_t r = ::read(out_fd_, chunk, sizeof chunk);
        if (r <= 0) return false;
        buf_.append(chunk, static_cast<std::size_t>(r));
    }
}

bool GitCatFileBatch::read_exact(std::size_t n, std::string& data) {
    while (buf_.size() < n) {
        char chunk[65536];
        ssize_t r = ::read(out_fd_, chunk, sizeof chunk);
        if (r <= 0) return false;
        buf_.append(chunk, static_cast<std::size_t>(r));
    }
    data = buf_.substr(0, n);
    buf_.erase(0, n);
    return true;
}

std::optional<std::string> GitCatFileBatch::read_object(const std::string& spec) {
    std::string req = spec + "\n";
    std::size_t off = 0;
    while (off < req.size()) {
        ssize_t w = ::write(in_fd_, req.data() + off, req.size() - off);
        if (w < 0) {
            if (errno == EINTR) continue;
            return std::nullopt;
        }
        off += static_cast<std::size_t>(w);
    }
    std::string header;
    if (!read_line(header)) return std::nullopt;
    if (header.find("missing") != std::string::npos ||
        header.find("ambiguous") != std::string::npos)
        return std::nullopt;
    auto last_sp = header.rfind(' ');
    if (last_sp == std::string::npos) return std::nullopt;
    std::size_t size = 0;
    const char* b = header.data() + last_sp + 1;
    auto [p, ec] = std::from_chars(b, header.data() + header.size(), size);
    (void)p;
    if (ec != std::errc()) return std::nullopt;
    std::string data;
    if (!read_exact(size + 1, data)) return std::nullopt;  // + trailing \n
    data.pop_back();
    return data;
}

// ---- GitRepo ---------------------------------------------------------------

std::optional<GitRepo> GitRepo::open(const std::string& path) {
    CommandResult r = run_command({"git", "-C", path, "rev-parse", "--git-dir"});
    if (!r.ok()) return std::nullopt;
    return GitRepo(path);
}

std::vector<std::pair<std::string, std::int64_t>> GitRepo::first_parent_log() const {
    CommandResult r =
        run_command({"git", "-C", path_, "log", "--first-parent", "--format=%H %ct", "HEAD"});
    std::vector<std::pair<std::string, std::int64_t>> out;
    if (!r.ok()) return out;  // empty history
    std::istringstream ss(r.out);
    std::string sha;
    std::int64_t ts;
    while (ss >> sha >> ts) out.emplace_back(sha, ts);
    return out;
}

std::optional<std::string> GitRepo::first_parent_of(const std::string& sha) const {
    CommandResult r = run_command({"git", "-C", path_, "rev-list", "--parents", "-n", "1", sha});
    if (!r.ok()) return std::nullopt;
    std::istringstream ss(r.out);
    std::string self, parent;
    ss >> self;
    if (!(ss >> parent)) return std::nullopt;  // root commit
    return parent;
}

bool GitRepo::has_commit(const std::string& sha) const {
    CommandResult r = run_command({"git", "-C", path_, "cat-file", "-e", sha + "^{commit}"});
    return r.ok();
}

std::vector<GitTreeEntry> GitRepo::ls_tree(const std::string& sha) const {
    CommandResult r = run_command({"git", "-C", path_, "ls-tree", "-r", "-z", sha});
    std::vector<GitTreeEntry> out;
    if (!r.ok()) return out;
    std::size_t pos = 0;
    while (pos < r.out.size()) {
        std::size_t nul = r.out.find('\0', pos);
        if (nul == std::string::npos) break;
        std::string_view entry(r.out.data() + pos, nul - pos);
        pos = nul + 1;
        // "<mode> <type> <oid>\t<path>"
        auto tab = entry.find('\t');
        if (tab == std::string_view::npos) continue;
        std::string_view meta = entry.substr(0, tab);
        std::string_view path = entry.substr(tab + 1);
        auto sp1 = meta.find(' ');
        auto sp2 = meta.find(' ', sp1 + 1);
        if (sp1 == std::string_view::npos || sp2 == std::string_view::npos) continue;
        std::string_view type = meta.substr(sp1 + 1, sp2 - sp1 - 1);
        if (type != "blob") continue;
        out.push_back({std::string(meta.substr(sp2 + 1)), std::string(path)});
    }
    return out;
}

}  // namespace fpmine
