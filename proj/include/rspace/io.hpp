#ifndef RSPACE_IO_HPP
#define RSPACE_IO_HPP

// Family and coloring files.  The first non-blank line is a header
//
//     # space=ellentuck ground=20 bound=1
//
// naming the space and its parameters; every later non-blank line that does
// not start with '#' holds one item in the space's canonical serialization,
// followed by a color for coloring files.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rspace/error.hpp"
#include "rspace/forcing.hpp"
#include "rspace/ramsey.hpp"

namespace rspace {

struct FileHeader {
    std::string space;
    std::map<std::string, std::string> params;

    bool has(const std::string& key) const { return params.count(key) != 0; }

    std::uint64_t number(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw parse_error("header lacks " + key + "=");
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != it->second.size() || it->second.front() == '-')
            throw parse_error("header value " + key + "=" + it->second + " is not a natural number");
        return v;
    }

    std::uint64_t number(const std::string& key, std::uint64_t fallback) const {
        return has(key) ? number(key) : fallback;
    }
};

struct ItemLine {
    std::size_t line = 0;
    std::string text;
};

struct ItemFile {
    FileHeader header;
    std::vector<ItemLine> items;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace detail

inline ItemFile parse_item_file(std::istream& in) {
    ItemFile out;
    bool header = false;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const auto text = detail::trim(raw);
        if (text.empty()) continue;
        if (!header) {
            if (text.front() != '#') throw parse_error("line " + std::to_string(line) + ": expected a '#' header");
            std::istringstream words(text.substr(1));
            std::string word;
            while (words >> word) {
                const auto eq = word.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw parse_error("line " + std::to_string(line) + ": header entry '" + word + "' is not key=value");
                const auto key = word.substr(0, eq);
                if (!out.header.params.emplace(key, word.substr(eq + 1)).second)
                    throw parse_error("line " + std::to_string(line) + ": repeated header key " + key);
            }
            auto it = out.header.params.find("space");
            if (it == out.header.params.end()) throw parse_error("line " + std::to_string(line) + ": header lacks space=");
            out.header.space = it->second;
            out.header.params.erase(it);
            header = true;
            continue;
        }
        if (text.front() == '#') continue;
        out.items.push_back({line, text});
    }
    if (!header) throw parse_error("empty file: no header");
    return out;
}

inline ItemFile parse_item_text(const std::string& text) {
    std::istringstream in(text);
    return parse_item_file(in);
}

/// Members parsed with the space's parser; the bound defaults to the longest member.
template <RamseySpace S>
FrontFamily<S> load_family(const S& space, const ItemFile& file) {
    std::vector<typename S::approx_type> members;
    for (const auto& item : file.items) {
        try {
            members.push_back(space.parse(item.text));
        } catch (const error& e) {
            throw parse_error("line " + std::to_string(item.line) + ": " + e.what());
        }
    }
    if (file.header.has("bound"))
        return FrontFamily<S>(space, std::move(members), static_cast<std::size_t>(file.header.number("bound")));
    return FrontFamily<S>(space, std::move(members));
}

/// Lines "item color"; the color count comes from the header key s.
template <RamseySpace S>
Coloring<S> load_coloring(const S& space, const ItemFile& file) {
    const auto s = static_cast<unsigned>(file.header.number("s"));
    std::vector<typename S::approx_type> domain;
    std::vector<unsigned> colors;
    for (const auto& item : file.items) {
        const auto cut = item.text.find_last_of(" \t");
        if (cut == std::string::npos) throw parse_error("line " + std::to_string(item.line) + ": missing color");
        const auto color = detail::trim(item.text.substr(cut + 1));
        if (color.empty() || color.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("line " + std::to_string(item.line) + ": bad color '" + color + "'");
        try {
            domain.push_back(space.parse(detail::trim(item.text.substr(0, cut))));
            colors.push_back(static_cast<unsigned>(std::stoul(color)));
        } catch (const error& e) {
            throw parse_error("line " + std::to_string(item.line) + ": " + e.what());
        } catch (const std::out_of_range&) {
            throw parse_error("line " + std::to_string(item.line) + ": color out of range");
        }
    }
    return Coloring<S>(std::move(domain), std::move(colors), s);
}

template <RamseySpace S>
std::string write_family(const S& space, const FileHeader& header, const FrontFamily<S>& f) {
    std::ostringstream out;
    out << "# space=" << header.space;
    for (const auto& [k, v] : header.params)
        if (k != "bound") out << ' ' << k << '=' << v;
    out << " bound=" << f.length_bound() << '\n';
    for (const auto& m : f.members()) out << space.serialize(m) << '\n';
    return out.str();
}

}  // namespace rspace

#endif
