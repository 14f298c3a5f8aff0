#!/usr/bin/env python3
"""Regenerate core/src/unicode_tables.inc from Python's unicodedata.

Emits:
  - kCaseFold: codepoints whose simple case fold differs from themselves.
    Simple folding is approximated from casefold()/lower() by keeping only
    single-codepoint mappings, which matches the C+S entries of the Unicode
    CaseFolding table.
  - kPunctuation / kWhitespace / kDecimalDigit: closed codepoint ranges.

Usage: python3 tools/gen_unicode_tables.py > core/src/unicode_tables.inc
"""

import sys
import unicodedata


def simple_fold(cp: int) -> int:
    c = chr(cp)
    f = c.casefold()
    if len(f) == 1:
        return ord(f)
    l = c.lower()
    if len(l) == 1:
        return ord(l)
    return cp


def ranges(predicate):
    out = []
    start = None
    prev = None
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            ok = False
        else:
            ok = predicate(cp)
        if ok:
            if start is None:
                start = cp
            prev = cp
        elif start is not None:
            out.append((start, prev))
            start = None
    if start is not None:
        out.append((start, prev))
    return out


def is_punct(cp: int) -> bool:
    return unicodedata.category(chr(cp)).startswith("P")


def is_space(cp: int) -> bool:
    if cp in (0x09, 0x0A, 0x0B, 0x0C, 0x0D, 0x85):
        return True
    return unicodedata.category(chr(cp)) in ("Zs", "Zl", "Zp")


def is_digit(cp: int) -> bool:
    return unicodedata.category(chr(cp)) == "Nd"


def emit_ranges(name, rs):
    print(f"inline constexpr CpRange {name}[] = {{")
    for i in range(0, len(rs), 4):
        row = ", ".join(f"{{0x{a:X}, 0x{b:X}}}" for a, b in rs[i : i + 4])
        print(f"    {row},")
    print("};")
    print()


def main():
    folds = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        f = simple_fold(cp)
        if f != cp:
            folds.append((cp, f))

    print("// Generated by tools/gen_unicode_tables.py "
          f"(Unicode {unicodedata.unidata_version}). Do not edit.")
    print()
    print(f"inline constexpr FoldEntry kCaseFold[] = {{")
    for i in range(0, len(folds), 4):
        row = ", ".join(f"{{0x{a:X}, 0x{b:X}}}" for a, b in folds[i : i + 4])
        print(f"    {row},")
    print("};")
    print()
    emit_ranges("kPunctuation", ranges(is_punct))
    emit_ranges("kWhitespace", ranges(is_space))
    emit_ranges("kDecimalDigit", ranges(is_digit))


if __name__ == "__main__":
    sys.exit(main())
