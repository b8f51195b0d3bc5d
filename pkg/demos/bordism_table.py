"""Print pi_0..pi_4 for every catalog spectrum, with certification flags."""

from adamsext.adams import abp_e2, assemble_groups, certify_collapse
from adamsext.chargen import CATALOG, catalog


def main():
    for entry in CATALOG:
        page = abp_e2(catalog(entry.label), 5, 24)
        cert = certify_collapse(page)
        rep = assemble_groups(page, cert, allow_uncertified=True)
        groups = "  ".join(f"{rep.group_str(n):>10}" for n in range(5))
        note = f"  (exotic? stems {list(rep.exotic_stems)})" if rep.exotic_stems else ""
        print(f"{entry.group:>10}  {groups}{note}")


if __name__ == "__main__":
    main()
