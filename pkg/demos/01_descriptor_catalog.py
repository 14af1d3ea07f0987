"""
Browsing the competency catalog
===============================

The package bundles a three-level, five-skill competency catalog
(Bachelor / Master / PhD x knowledge, application, judgment,
communication, learning). This script walks the taxonomy and shows the
lookup API.
"""

from regimetrics import default_catalog

catalog = default_catalog()
print(f"{len(catalog.entries)} entries, levels 1-3, five skills per level\n")

# The catalog is ordered by (skill number, level): all three levels of a
# skill family appear together.
for level in (1, 2, 3):
    entries = catalog.level_entries(level)
    print(f"Level {level} ({entries[0].level_name})")
    for entry in entries:
        print(f"  {entry.skill_id}  {entry.skill_name}")
    print()

# Lookup by skill id returns the full record including the
# qualification request text.
entry = catalog.lookup("3.3")
print(f"lookup('3.3') -> level {entry.level} {entry.level_name}, {entry.skill_name}")
print(f"  request {entry.request_id}: {entry.request_text}")

# Unknown ids raise KeyError, the usual mapping contract.
try:
    catalog.lookup("9.9")
except KeyError as exc:
    print(f"\nlookup('9.9') -> KeyError: {exc}")
