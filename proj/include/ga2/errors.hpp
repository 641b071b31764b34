/*
   Copyright 2026 The ga2 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GA2_ERRORS_HPP
#define GA2_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ga2 {

/// Base class of all typed errors thrown by the library. `kind()` is a
/// stable machine-readable tag; `what()` carries the human message.
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

   private:
    std::string kind_;
};

#define GA2_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
       public:                                                              \
        explicit Name(const std::string& msg = "") : Error(#Name, msg) {}   \
    }

GA2_DEFINE_ERROR(DivisionByZero);
GA2_DEFINE_ERROR(FieldMismatch);
GA2_DEFINE_ERROR(NotPrime);
GA2_DEFINE_ERROR(ZeroInput);
GA2_DEFINE_ERROR(ZeroPolynomial);
GA2_DEFINE_ERROR(CharacteristicTwo);
GA2_DEFINE_ERROR(Singular);
GA2_DEFINE_ERROR(InvalidLetters);
GA2_DEFINE_ERROR(NotAnAutomorphism);
GA2_DEFINE_ERROR(NoElementaryPart);
GA2_DEFINE_ERROR(NotCyclicallyReduced);
GA2_DEFINE_ERROR(Undecided);
GA2_DEFINE_ERROR(NotInvolution);
GA2_DEFINE_ERROR(NotInFactor);
GA2_DEFINE_ERROR(CapExceeded);
GA2_DEFINE_ERROR(TheoremViolation);
GA2_DEFINE_ERROR(NotAReversor);
GA2_DEFINE_ERROR(NotFixedPoint);
GA2_DEFINE_ERROR(InconsistentCertificates);
GA2_DEFINE_ERROR(FourthRootPresent);
GA2_DEFINE_ERROR(EvenPolynomial);
GA2_DEFINE_ERROR(ZeroGamma);
GA2_DEFINE_ERROR(NotFiniteField);
GA2_DEFINE_ERROR(NotRationalField);
GA2_DEFINE_ERROR(ReversorCheckFailed);
GA2_DEFINE_ERROR(SymmetryCheckFailed);
GA2_DEFINE_ERROR(FieldLiteralError);
GA2_DEFINE_ERROR(InternalError);

#undef GA2_DEFINE_ERROR

/// Parse failure with a byte position into the offending text.
class ParseError : public Error {
   public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error("ParseError", msg + " (at position " + std::to_string(pos) + ")"),
          pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

   private:
    std::size_t pos_;
};

}  // namespace ga2

#endif  // GA2_ERRORS_HPP
