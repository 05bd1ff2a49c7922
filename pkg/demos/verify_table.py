"""
Checking the bundled 12/3 table
===============================

Load the table, confirm every 3-subset is underlined once and the punctured
balls never touch, then decode a few words by hand.
"""

from gks import canonical_table, decode, lookup_by_underline, verify_table

table = canonical_table()
print(f"{len(table)} rows of length {table.m}, {table.u} underlines each")

report = verify_table(table)
print(report.to_text())

# the row Alice copies after seeing positions 1, 2 and 4 first
row = lookup_by_underline(table, {1, 2, 4})
print("row for {1,2,4}:", row)

# one free bit flipped is still recognised, with the flip located
for word in ["111000100000", "111010100000", "000000000000"]:
    print(word, "->", decode(table, word))
