#include "giohms/cover.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "giohms/errors.hpp"

namespace giohms {

Cover Cover::from_member_sets(const std::vector<std::vector<VertexId>>& sets) {
    Cover cover;
    for (const auto& raw : sets) cover.append(raw);
    return cover;
}

CommunityId Cover::append(std::vector<VertexId> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw InputError("empty community is not allowed in a cover");
    const CommunityId id = next_id_++;
    communities_.push_back(Community{id, std::move(members)});
    return id;
}

std::vector<VertexId> Cover::member_union() const {
    std::vector<VertexId> all;
    for (const auto& c : communities_) all.insert(all.end(), c.members.begin(), c.members.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

bool Cover::member_sets_unique() const {
    std::vector<const std::vector<VertexId>*> sets;
    sets.reserve(communities_.size());
    for (const auto& c : communities_) sets.push_back(&c.members);
    std::sort(sets.begin(), sets.end(),
              [](const auto* a, const auto* b) { return *a < *b; });
    for (std::size_t i = 1; i < sets.size(); ++i) {
        if (*sets[i - 1] == *sets[i]) return false;
    }
    return true;
}

void write_cover(const Cover& cover, std::ostream& out) {
    std::vector<std::string> lines;
    lines.reserve(cover.size());
    for (const auto& c : cover.communities()) {
        std::ostringstream line;
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            if (i > 0) line << ' ';
            line << c.members[i];
        }
        lines.push_back(line.str());
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) out << line << '\n';
}

void write_cover_file(const Cover& cover, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open cover file for writing: " + path);
    write_cover(cover, out);
}

Cover read_cover(std::istream& in) {
    std::vector<std::vector<VertexId>> sets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos || line[pos] == '#') continue;

        std::istringstream fields(line);
        std::vector<VertexId> members;
        std::string token;
        while (fields >> token) {
            VertexId v = 0;
            for (const char c : token) {
                if (c < '0' || c > '9') {
                    throw InputError("cover file line " + std::to_string(line_no) +
                                     ": non-integer vertex id '" + token + "'");
                }
                v = v * 10 + static_cast<VertexId>(c - '0');
            }
            members.push_back(v);
        }
        sets.push_back(std::move(members));
    }
    return Cover::from_member_sets(sets);
}

Cover read_cover_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open cover file: " + path);
    return read_cover(in);
}

} // namespace giohms
