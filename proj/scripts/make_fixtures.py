#!/usr/bin/env python3
"""Writes corpus/fixtures/v1.json and v2.json (v2 = v1 plus one column and one table)."""
import copy
import hashlib
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent


def user(name, password, salt, grants):
    digest = hashlib.pbkdf2_hmac("sha256", password.encode(), salt.encode(), 4096, 32).hex()
    return {"UserName": name, "PasswordHash": digest, "Salt": salt, "Grants": grants}


def col(name, type_, en, cs=None, **kw):
    c = {"Name": name, "DataType": type_, "Nullable": kw.pop("nullable", False),
         "PrimaryKey": kw.pop("pk", False), "AutoGenerated": kw.pop("auto", False),
         "Editable": kw.pop("editable", True)}
    if "max_length" in kw:
        c["MaxLength"] = kw.pop("max_length")
    if "ref" in kw:
        t, cname = kw.pop("ref")
        c["References"] = {"Table": t, "Column": cname}
    c["Titles"] = {"en": en, **({"cs": cs} if cs else {})}
    assert not kw, kw
    return c


department = {
    "Name": "Department",
    "SingularTitles": {"en": "Department", "cs": "Oddělení"},
    "PluralTitles": {"en": "Departments", "cs": "Oddělení"},
    "Description": "Organizational units",
    "DisplayColumn": "Name",
    "Columns": [
        col("Id", "int", "ID", pk=True, auto=True, editable=False),
        col("Name", "varchar", "Name", "Název", max_length=50),
    ],
    "Rows": [["1", "Sales"], ["2", "Engineering"], ["3", "Marketing"], ["4", "Legal"]],
}

employee = {
    "Name": "Employee",
    "SingularTitles": {"en": "Employee", "cs": "Zaměstnanec"},
    "PluralTitles": {"en": "Employees", "cs": "Zaměstnanci"},
    "DisplayColumn": "Name",
    "Columns": [
        col("Id", "int", "ID", pk=True, auto=True, editable=False),
        col("Name", "varchar", "Name", "Jméno", max_length=40),
        col("Age", "int", "Age", "Věk", nullable=True),
        col("Salary", "decimal", "Salary", "Plat", nullable=True),
        col("HiredAt", "datetime", "Hired at", "Nástup", nullable=True),
        col("Active", "boolean", "Active", "Aktivní"),
        col("DeptId", "int", "Department", "Oddělení", nullable=True, ref=("Department", "Id")),
    ],
    "Rows": [
        ["1", "Alice", "34", "5200.50", "2019-03-01T09:00:00Z", "true", "1"],
        ["2", "Bob", "28", "4100", "2021-07-15T08:30:00Z", "true", "2"],
        ["3", "Carol", None, "6100.25", "2015-01-10T10:00:00Z", "false", "1"],
        ["4", "Dan", "45", None, None, "true", None],
        ["5", "Eve", "31", "4800", "2020-11-02T12:00:00Z", "true", "2"],
        ["6", "O'Brien", "52", "7000", "2010-05-20T07:45:00Z", "false", "3"],
    ],
}

project = {
    "Name": "Project",
    "SingularTitles": {"en": "Project", "cs": "Projekt"},
    "PluralTitles": {"en": "Projects", "cs": "Projekty"},
    "Columns": [
        col("Code", "varchar", "Code", "Kód", pk=True, max_length=8),
        col("Title", "text", "Title", "Název"),
        col("LeadId", "int", "Lead", "Vedoucí", nullable=True, ref=("Employee", "Id")),
        col("Budget", "decimal", "Budget", "Rozpočet", nullable=True),
    ],
    "Rows": [
        ["APOLLO", "Moon landing", "2", "1000000.00"],
        ["ZEUS", "Sky platform", None, None],
    ],
}

ALL = [1, 2, 3, 4]
v1 = {
    "DefaultLanguage": "en",
    "Tables": [department, employee, project],
    "Users": [
        user("admin", "admin-secret", "c0ffee01", {"Department": ALL, "Employee": ALL, "Project": ALL}),
        user("reader", "reader-pass", "c0ffee02", {"Department": [1], "Employee": [1]}),
        user("clerk", "clerk-pass", "c0ffee03", {"Employee": [1, 2]}),
        user("nobody", "nobody-pass", "c0ffee04", {}),
    ],
}

v2 = copy.deepcopy(v1)
emp2 = next(t for t in v2["Tables"] if t["Name"] == "Employee")
emp2["Columns"].append(col("Email", "varchar", "E-mail", "E-mail", nullable=True, max_length=100))
for row, email in zip(emp2["Rows"], ["alice@example.com", None, "carol@example.com", None, "eve@example.com", None]):
    row.append(email)
v2["Tables"].append({
    "Name": "Office",
    "SingularTitles": {"en": "Office", "cs": "Kancelář"},
    "PluralTitles": {"en": "Offices", "cs": "Kanceláře"},
    "DisplayColumn": "City",
    "Columns": [
        col("Id", "int", "ID", pk=True, auto=True, editable=False),
        col("City", "varchar", "City", "Město", max_length=60),
    ],
    "Rows": [["1", "Brno"], ["2", "Prague"]],
})
v2["Users"][0]["Grants"]["Office"] = ALL
v2["Users"][1]["Grants"]["Office"] = [1]

out = ROOT / "corpus" / "fixtures"
out.mkdir(parents=True, exist_ok=True)
for name, doc in (("v1.json", v1), ("v2.json", v2)):
    (out / name).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
