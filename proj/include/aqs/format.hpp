// format.hpp: round-trip number formatting and the CSV dialect shared by all
// outputs ('#' key=value header lines, comma separated, LF line endings)

#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace aqs {

using Metadata = std::vector<std::pair<std::string, std::string>>;

// 17 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double x);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void metadata(const Metadata& md);
    void comment(const std::string& key, const std::string& value);
    void header(std::initializer_list<const char*> columns);
    void header(const std::vector<std::string>& columns);

    CsvWriter& operator<<(double x);
    CsvWriter& operator<<(int x);
    CsvWriter& operator<<(std::size_t x);
    CsvWriter& operator<<(const std::string& x);
    CsvWriter& operator<<(const char* x) { return *this << std::string(x); }
    CsvWriter& operator<<(bool x) { return *this << std::string(x ? "true" : "false"); }
    void end_row();

private:
    void sep();

    std::ostream& os_;
    bool first_{true};
};

} // namespace aqs
