#include "dstore/bounds.hpp"

#include <iomanip>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace dstore {

namespace {

void validate(const BoundParams& p) {
    if (p.tau <= 1) throw Error(ErrorKind::InvalidParams, "tau must exceed 1");
    if (p.d_bits < 1) throw Error(ErrorKind::InvalidParams, "D must be positive");
    if (p.l_cap < 1) throw Error(ErrorKind::InvalidParams, "L must be positive");
    if (p.readers < 1) throw Error(ErrorKind::InvalidParams, "R must be positive");
}

BigInt pow2(int d) { return BigInt(1) << d; }

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

}  // namespace

BigInt block_bound(const BoundParams& p) {
    validate(p);
    const BigInt tau = p.tau;
    const BigInt others = pow2(p.d_bits) - 1;  // values other than the one being read
    const BigInt readers = p.readers;
    if (p.flavor == Flavor::General) {
        BigInt m = ceil_div(others, p.l_cap);
        if (p.visibility == Visibility::Visible) m = std::min(m, readers);
        return tau + (tau - 1) * m;
    }
    if (p.visibility == Visibility::Invisible) return tau * pow2(p.d_bits);
    return tau + (tau - 1) * std::min(others, readers);
}

BigInt bit_bound_symmetric(const BoundParams& p) {
    validate(p);
    if (p.flavor != Flavor::CommonWrite) throw Error(ErrorKind::InvalidParams, "bit bounds are for the common-write flavor");
    const BigInt d = p.d_bits;
    if (p.visibility == Visibility::Invisible) return d * pow2(p.d_bits);
    const BigInt tau = p.tau;
    const BigInt m = std::min(pow2(p.d_bits) - 1, BigInt(p.readers));
    return ceil_div(d * tau + d * (tau - 1) * m, tau);
}

namespace {

using Float = boost::multiprecision::cpp_bin_float_50;

std::string format(const Float& x, int digits) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(std::max(digits - 1, 0)) << x;
    std::string out = s.str();
    // "1.20e+04" -> "1.20e4"
    if (auto e = out.find('e'); e != std::string::npos) {
        auto digit = e + 1;
        if (digit < out.size() && out[digit] == '+') out.erase(digit, 1);
        else if (digit < out.size() && out[digit] == '-') ++digit;
        while (digit + 1 < out.size() && out[digit] == '0') out.erase(digit, 1);
    }
    return out;
}

}  // namespace

std::string scientific(const BigInt& x, int digits) { return format(Float(x), digits); }

std::string bits_as_terabytes(const BigInt& bits, int digits) {
    return format(Float(bits) / Float(BigInt(1) << 43), digits);
}

std::string bounds_table(int tau, int d_bits, int l_cap, int readers) {
    std::ostringstream s;
    const auto cell = [&](Flavor f, Visibility v) {
        return block_bound({tau, d_bits, l_cap, readers, v, f}).str();
    };
    s << "tau=" << tau << " D=" << d_bits << " L=" << l_cap << " R=" << readers << '\n';
    s << std::left << std::setw(14) << "" << std::setw(12) << "invisible" << "visible" << '\n';
    s << std::setw(14) << "general" << std::setw(12) << cell(Flavor::General, Visibility::Invisible)
      << cell(Flavor::General, Visibility::Visible) << '\n';
    s << std::setw(14) << "common_write" << std::setw(12) << cell(Flavor::CommonWrite, Visibility::Invisible)
      << cell(Flavor::CommonWrite, Visibility::Visible) << '\n';
    s << std::setw(14) << "bits" << std::setw(12)
      << bit_bound_symmetric({tau, d_bits, l_cap, readers, Visibility::Invisible, Flavor::CommonWrite}).str()
      << bit_bound_symmetric({tau, d_bits, l_cap, readers, Visibility::Visible, Flavor::CommonWrite}).str() << '\n';
    return s.str();
}

std::string bounds_csv(const std::vector<int>& taus, const std::vector<int>& ds, const std::vector<int>& ls,
                       const std::vector<int>& rs) {
    std::ostringstream s;
    s << "tau,d_bits,l_cap,readers,flavor,visibility,blocks,bits\n";
    for (int tau : taus)
        for (int d : ds)
            for (int l : ls)
                for (int r : rs)
                    for (auto f : {Flavor::General, Flavor::CommonWrite})
                        for (auto v : {Visibility::Invisible, Visibility::Visible}) {
                            const BoundParams p{tau, d, l, r, v, f};
                            s << tau << ',' << d << ',' << l << ',' << r << ',' << to_string(f) << ','
                              << to_string(v) << ',' << block_bound(p) << ','
                              << (f == Flavor::CommonWrite ? bit_bound_symmetric(p).str() : std::string()) << '\n';
                        }
    return s.str();
}

}  // namespace dstore
