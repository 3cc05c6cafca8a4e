#!/usr/bin/env python3
"""Writes request.json and meta.json for every conformance case.

Expected responses are recorded afterwards from the reference service:

    build/tools/rsp conformance --record --fixture corpus/fixtures/v1.json --corpus corpus

Cases run in name order against one freshly started server, so later cases
observe the effects of earlier submits. Error cases compare only the error
code ("fields" mode with a {"Code": ...} template); everything else compares
the whole canonical body.
"""

import json
import pathlib
import shutil

ROOT = pathlib.Path(__file__).resolve().parent.parent / "corpus"

ADMIN = {"UserName": "admin", "Password": "admin-secret"}
READER = {"UserName": "reader", "Password": "reader-pass"}
CLERK = {"UserName": "clerk", "Password": "clerk-pass"}
NOBODY = {"UserName": "nobody", "Password": "nobody-pass"}


def field(table, name):
    # The provider matches fields by Name; the other members are placeholders.
    return {
        "DataType": "text",
        "ID": f"{table}.{name}",
        "IsAutoGenerated": False,
        "IsDisplayField": False,
        "IsEditable": True,
        "IsForeignKey": False,
        "IsJoined": False,
        "IsNullable": True,
        "IsPrimaryKey": False,
        "Name": name,
        "Table": table,
        "Title": name,
    }


def headers(who, language=None):
    body = dict(who)
    if language:
        body["Language"] = language
    return body


def read(who, table, skip=0, take=0, order=None, filt=None, language=None):
    body = dict(who)
    body.update({"TableName": table, "Skip": skip, "Take": take})
    if language:
        body["Language"] = language
    if order is not None:
        body["OrderExpression"] = order
    if filt is not None:
        body["FilterExpression"] = filt
    return body


def submit(who, table, operation, values):
    body = dict(who)
    body.update({
        "TableName": table,
        "Operation": operation,
        "Fields": [field(table, name) for name, _ in values],
        "Data": [value for _, value in values],
    })
    return body


INSERT, UPDATE, DELETE = 1, 2, 3

CASES = {
    # name: (endpoint, request, error case?)
    "h01_headers_admin": ("ReadTableHeaders", headers(ADMIN), False),
    "h02_headers_reader_two_tables": ("ReadTableHeaders", headers(READER), False),
    "h03_headers_czech": ("ReadTableHeaders", headers(ADMIN, "cs"), False),
    "h04_headers_unknown_language_falls_back": ("ReadTableHeaders", headers(ADMIN, "fr"), False),
    "h05_headers_no_grants": ("ReadTableHeaders", headers(NOBODY), False),
    "h06_headers_wrong_password": ("ReadTableHeaders", headers({"UserName": "admin", "Password": "x"}), True),
    "h07_headers_unknown_user": ("ReadTableHeaders", headers({"UserName": "eve", "Password": "x"}), True),
    "r01_read_employee_all": ("ReadTable", read(ADMIN, "Employee"), False),
    "r02_read_department_with_references": ("ReadTable", read(ADMIN, "Department"), False),
    "r03_read_project_text_key": ("ReadTable", read(ADMIN, "Project"), False),
    "r04_read_page": ("ReadTable", read(ADMIN, "Employee", skip=2, take=2, order="Name DESC"), False),
    "r05_read_skip_past_end": ("ReadTable", read(ADMIN, "Employee", skip=50, take=5), False),
    "r06_read_filter_joined": ("ReadTable", read(ADMIN, "Employee", filt="Department.Name = 'Sales'"), False),
    "r07_read_filter_like": ("ReadTable", read(ADMIN, "Employee", filt="Name LIKE '%a%' OR Name LIKE 'E_e'"), False),
    "r08_read_filter_null": ("ReadTable", read(ADMIN, "Employee", filt="Age IS NULL OR Salary IS NULL"), False),
    "r09_read_filter_types": (
        "ReadTable",
        read(ADMIN, "Employee", filt="Active = true AND Salary >= 4800.00 AND HiredAt < '2021-01-01T00:00:00Z'"),
        False,
    ),
    "r10_read_order_multi": ("ReadTable", read(ADMIN, "Employee", order="Active DESC, Department.Name, Age DESC"), False),
    "r11_read_czech_titles": ("ReadTable", read(ADMIN, "Employee", take=1, language="cs"), False),
    "r12_read_hostile_literal": (
        "ReadTable",
        read(ADMIN, "Employee", filt="Name = 'x'' OR 1=1; DROP TABLE Employee; --'"),
        False,
    ),
    "r13_read_quote_in_data": ("ReadTable", read(ADMIN, "Employee", filt="Name = 'O''Brien'"), False),
    "r20_read_unknown_table": ("ReadTable", read(ADMIN, "Payroll"), True),
    "r21_read_forbidden_table": ("ReadTable", read(READER, "Project"), True),
    "r22_read_syntax_error": ("ReadTable", read(ADMIN, "Employee", filt="Age >"), True),
    "r23_read_unknown_field": ("ReadTable", read(ADMIN, "Employee", filt="Bonus > 1"), True),
    "r24_read_type_mismatch": ("ReadTable", read(ADMIN, "Employee", filt="Age = 'old'"), True),
    "r25_read_missing_take": ("ReadTable", {k: v for k, v in read(ADMIN, "Employee").items() if k != "Take"}, True),
    "r26_read_negative_skip": ("ReadTable", read(ADMIN, "Employee", skip=-1), True),
    "s01_insert_department": ("Submit", submit(ADMIN, "Department", INSERT, [("Name", "Research")]), False),
    "s02_insert_employee_with_nulls": (
        "Submit",
        submit(ADMIN, "Employee", INSERT,
               [("Name", "Frank"), ("Age", None), ("Salary", "3900.5"), ("Active", "true"), ("DeptId", "5")]),
        False,
    ),
    "s03_update_employee": ("Submit", submit(ADMIN, "Employee", UPDATE, [("Id", "2"), ("Age", "29")]), False),
    "s04_delete_project": ("Submit", submit(ADMIN, "Project", DELETE, [("Code", "ZEUS")]), False),
    "s05_read_after_submits": ("ReadTable", read(ADMIN, "Employee", filt="Id = 2 OR Id = 7"), False),
    "s06_clerk_insert_employee": ("Submit", submit(CLERK, "Employee", INSERT, [("Name", "Gina"), ("Active", "false")]), False),
    "s20_delete_referenced_department": ("Submit", submit(ADMIN, "Department", DELETE, [("Id", "1")]), True),
    "s21_update_missing_row": ("Submit", submit(ADMIN, "Employee", UPDATE, [("Id", "999"), ("Age", "1")]), True),
    "s22_clerk_update_forbidden": ("Submit", submit(CLERK, "Employee", UPDATE, [("Id", "1"), ("Age", "35")]), True),
    "s23_bad_operation": ("Submit", submit(ADMIN, "Department", 9, [("Name", "X")]), True),
    "s24_dangling_foreign_key": (
        "Submit", submit(ADMIN, "Employee", INSERT, [("Name", "Hal"), ("Active", "true"), ("DeptId", "77")]), True),
    "s25_bad_integer": ("Submit", submit(ADMIN, "Employee", UPDATE, [("Id", "1"), ("Age", "thirty")]), True),
    "s26_null_into_required": ("Submit", submit(ADMIN, "Employee", UPDATE, [("Id", "1"), ("Name", None)]), True),
    "s27_set_identity_column": ("Submit", submit(ADMIN, "Department", INSERT, [("Id", "40"), ("Name", "Ops")]), True),
    "s28_field_data_mismatch": (
        "Submit",
        dict(submit(ADMIN, "Department", INSERT, [("Name", "Ops")]), Data=["Ops", "extra"]),
        True,
    ),
}


def main():
    for entry in ROOT.iterdir():
        if entry.is_dir() and entry.name != "fixtures":
            shutil.rmtree(entry)
    for name, (endpoint, request, is_error) in CASES.items():
        directory = ROOT / name
        directory.mkdir(parents=True)
        (directory / "request.json").write_text(json.dumps(request, indent=2, ensure_ascii=False) + "\n")
        meta = {"Endpoint": endpoint, "Compare": "fields" if is_error else "exact", "ExpectStatus": 0}
        (directory / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
        if is_error:
            (directory / "expected.json").write_text(json.dumps({"Code": ""}) + "\n")


if __name__ == "__main__":
    main()
