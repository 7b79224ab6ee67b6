#pragma once

#include <stdexcept>
#include <string>

namespace truecc {

enum class Errc {
  InvalidArgument,
  DuplicateEvent,
  TooManyEvents,
  UndeclaredEvent,
  ConstraintTnotSubsetS,
  MissingClosure,
  ConfigNotInStructure,
  TargetNotInStructure,
  NotRooted,
  NotStableInput,
  PreconditionViolated,
  CubicalLawViolation,
  LabelMismatch,
  PartialMap,
  NoInitial,
  CellNotFound,
  CyclicInput,
  DimensionCap,
  SearchBudgetExceeded,
  LabelConflictInClass,
  LengthMismatch,
  EmptyRefinementImage,
  BudgetExceeded,
  TnotSubsetS,
  SCOverlap,
  MissingDiagonalWithC,
  ProjectionViolatesSTConstraint,
  InvalidValuation,
  ParseError,
  SchemaError,
  UnknownSubcommand,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace truecc
