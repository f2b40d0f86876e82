#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

namespace fmkdv {

// Header row on construction, then one row per call.  Reals use 17
// significant digits in scientific notation.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::initializer_list<std::string> header) : os_(os)
    {
        bool first = true;
        for (const auto& h : header) {
            if (!first) os_ << ',';
            os_ << h;
            first = false;
        }
        os_ << '\n';
    }

    template <class... Ts>
    void row(const Ts&... values)
    {
        bool first = true;
        ((put(values, first)), ...);
        os_ << '\n';
    }

    static std::string format(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.16e", v);
        return buf;
    }

private:
    template <class T>
    void put(const T& v, bool& first)
    {
        if (!first) os_ << ',';
        first = false;
        if constexpr (std::is_floating_point_v<T>)
            os_ << format(static_cast<double>(v));
        else if constexpr (std::is_convertible_v<T, std::string>)
            os_ << quote(std::string(v));
        else
            os_ << v;
    }

    static std::string quote(const std::string& s)
    {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + '"';
    }

    std::ostream& os_;
};

} // namespace fmkdv
