import pandas as pd
import xlsxwriter

from .utils import deprecated

class XlsWriter():

    def verify2xls(self, frame=None, fileName='pyalcove.xlsx'):
        ''' create excel file with a sheet for each affine type, lines for each (w, x, field) and a column per result field.
        runs as method on the AffineSystem object, frame defaults to the result of the last campaign run '''

        if frame is None:
            frame = getattr(self, '_last_frame', None)
        if not isinstance(frame, pd.DataFrame):
            raise TypeError('verify2xls needs a VerifyFrame, run campaigns.verify() first or pass frame=')

        writer = pd.ExcelWriter(f'{fileName}', engine='xlsxwriter')
        matchFormats = {
                    'FALSE': writer.book.add_format({'bg_color': 'red'}),
                    'TRUE': writer.book.add_format({'bg_color': 'lime'}),
                }

        format_br = writer.book.add_format({})
        format_br.set_rotation(90)
        format_center = writer.book.add_format({})
        format_center.set_align('center')
        format_center.set_align('vcenter')

        columns = list(frame.columns)
        matchColumn = columns.index('MATCH')
        types = [t for t in frame['TYPE'].unique() if t]
        for affineType in types or ['results']:
            sheet = frame.loc[frame['TYPE']==affineType] if types else frame
            sheetName = affineType.replace('~', ' affine')[:31]
            sheet.to_excel(writer, sheet_name=sheetName, index=False)
            worksheet = writer.sheets[sheetName]
            rows = sheet.shape[0]
            worksheet.set_row(0, 64, format_br)
            worksheet.set_column(0, len(columns)-1, 8, format_center)
            worksheet.set_column(columns.index('KL_POLY'), columns.index('KL_POLY'), 24)
            worksheet.set_column(columns.index('NOTE'), columns.index('NOTE'), 48)
            for level,fmt in matchFormats.items():
                worksheet.conditional_format(1,matchColumn,rows,matchColumn,
                    {
                        "type": "cell",
                        "criteria": "==",
                        "value": level,
                        "format": fmt
                     }
                )

        writer.close()

    xls = deprecated(verify2xls,"xls")
