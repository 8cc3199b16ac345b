from django import forms

from regulous.conf import option


class RunOptionsForm(forms.Form):
    order = forms.IntegerField(required=False, min_value=1)
    budget = forms.IntegerField(required=False, min_value=1)
    tower_depth = forms.IntegerField(required=False, min_value=0)
    workers = forms.IntegerField(required=False, min_value=1)

    def clean_order(self):
        order = self.cleaned_data.get("order")
        if order is not None and order > option("ORDER_CAP"):
            raise forms.ValidationError(
                "Order %(order)s is above the order cap %(cap)s.",
                code="max_value",
                params={"order": order, "cap": option("ORDER_CAP")},
            )
        return order

    def error_text(self):
        return "; ".join(f"{name}: {' '.join(messages)}" for name, messages in self.errors.items())
