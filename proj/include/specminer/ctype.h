//===-- ctype.h - KernelC types ---------------------------------*- C++ -*-===//

#pragma once

#include <string>

namespace specminer {

enum class CTypeKind { Int, VoidPtr, StructPtr, Void };

struct CType {
  CTypeKind kind = CTypeKind::Int;
  std::string structName; // only for StructPtr

  static CType intType() { return {CTypeKind::Int, {}}; }
  static CType voidPtr() { return {CTypeKind::VoidPtr, {}}; }
  static CType voidType() { return {CTypeKind::Void, {}}; }
  static CType structPtr(std::string name) {
    return {CTypeKind::StructPtr, std::move(name)};
  }

  bool isInt() const { return kind == CTypeKind::Int; }
  bool isVoid() const { return kind == CTypeKind::Void; }
  bool isStructPtr() const { return kind == CTypeKind::StructPtr; }
  bool isPointer() const {
    return kind == CTypeKind::VoidPtr || kind == CTypeKind::StructPtr;
  }

  std::string str() const {
    switch (kind) {
    case CTypeKind::Int:
      return "int";
    case CTypeKind::VoidPtr:
      return "void*";
    case CTypeKind::StructPtr:
      return "struct " + structName + "*";
    case CTypeKind::Void:
      return "void";
    }
    return "?";
  }

  auto operator<=>(const CType &) const = default;
};

} // namespace specminer
