"""
Output renderers for the command-line interface.
JSON, CSV and plain-text tables carry the same numeric strings.
"""
import csv
import io
import json

FORMATS = ('json', 'csv', 'table')


def _json(payload):
    return json.dumps(payload, indent=2)


def _csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow(['' if cell is None else cell for cell in row])
    return buffer.getvalue().rstrip('\n')


def _table(header, rows, title=None):
    cells = [[str(h) for h in header]] + [['-' if c is None else str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = [title] if title else []
    for index, row in enumerate(cells):
        lines.append('  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        if index == 0:
            lines.append('  '.join('-' * width for width in widths))
    return '\n'.join(lines)


def render_report(report, fmt, digits=None):
    """Render a MomentReport."""
    data = report.to_dict(digits)
    if fmt == 'json':
        return _json(data)
    rows = [[report.kind, k, value, report.provenance] for k, value in data['values'].items()]
    header = ['kind', 'k', 'value', 'provenance']
    if fmt == 'csv':
        return _csv(header, rows)
    title = f"{report.kind} moments ({report.provenance})"
    if data['mu'] is not None:
        title += f", mu = {data['mu']}"
    if data['truncation_bound'] is not None:
        title += f", truncation bound {data['truncation_bound']}"
    return _table(header, rows, title)


def render_pmf(dist, via, table, fmt, digits=None):
    """Render a {x: probability} table computed by route `via`."""
    pmf = {str(x): p.to_str(digits) for x, p in table.items()}
    if fmt == 'json':
        return _json({'dist': dist, 'via': via, 'pmf': pmf})
    rows = [[x, p] for x, p in pmf.items()]
    if fmt == 'csv':
        return _csv(['x', 'probability'], rows)
    return _table(['x', 'probability'], rows, f"pmf via {via}")


def render_series(series, fmt, digits=None):
    """Render a SeriesPoly."""
    data = series.to_dict(digits)
    if fmt == 'json':
        return _json(data)
    rows = [[series.kind, power, c] for power, c in enumerate(data['coeffs'])]
    header = ['kind', 'power', 'coefficient']
    if fmt == 'csv':
        return _csv(header, rows)
    return _table(header, rows, f"{series.kind} series of order {series.order}")


def render_verify(dist, ok, rows, columns, notes, fmt):
    """Render a verification matrix; rows are dicts of already-rendered strings."""
    if fmt == 'json':
        return _json({'dist': dist, 'ok': ok, 'rows': rows, 'notes': notes})
    header = ['kind', 'k'] + list(columns) + ['ok']
    body = [[row['kind'], row['k']] + [row.get(c) for c in columns] + [str(row['ok']).lower()] for row in rows]
    if fmt == 'csv':
        return _csv(header, body)
    text = _table(header, body, f"verify: {'ok' if ok else 'MISMATCH'}")
    if notes:
        text += '\n' + '\n'.join(f"note: {note}" for note in notes)
    return text
