#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fpmine {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;

    bool ok() const { return exit_code == 0; }
};

// Runs a command without a shell; stdin_data is written and closed before
// reading. Throws std::runtime_error when the process cannot be spawned.
CommandResult run_command(const std::vector<std::string>& argv,
                          const std::string& stdin_data = {});

struct GitTreeEntry {
    std::string oid;
    std::string path;
};

// Persistent `git cat-file --batch` child for bulk object reads.
class GitCatFileBatch {
public:
    explicit GitCatFileBatch(const std::string& repo_path);
    ~GitCatFileBatch();
    GitCatFileBatch(const GitCatFileBatch&) = delete;
    GitCatFileBatch& operator=(const GitCatFileBatch&) = delete;

    // Blob content for an oid or rev spec; nullopt when missing.
    std::optional<std::string> read_object(const std::string& spec);

private:
    int in_fd_ = -1;   // we write requests here
    int out_fd_ = -1;  // we read responses here
    pid_t pid_ = -1;
    std::string buf_;

    bool read_line(std::string& line);
    bool read_exact(std::size_t n, std::string& data);
};

// Read-only view of a local git repository via git plumbing commands.
class GitRepo {
public:
    static std::optional<GitRepo> open(const std::string& path);

    const std::string& path() const { return path_; }

    // First-parent chain from HEAD, newest first, with committer timestamps.
    // Empty on an empty repository.
    std::vector<std::pair<std::string, std::int64_t>> first_parent_log() const;

    std::optional<std::string> first_parent_of(const std::string& sha) const;
    bool has_commit(const std::string& sha) const;

    // All blobs of a commit's tree.
    std::vector<GitTreeEntry> ls_tree(const std::string& sha) const;

private:
    explicit GitRepo(std::string path) : path_(std::move(path)) {}
    std::string path_;
};

}  // namespace fpmine
